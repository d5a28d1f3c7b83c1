#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cadenoise/ca.hpp"
#include "cadenoise/image.hpp"

namespace cadenoise {

/// Nonempty, strictly increasing set of intensity thresholds in [0, 255].
class ThresholdSet {
 public:
  ThresholdSet() = default;
  /// Throws std::invalid_argument if the invariant does not hold.
  explicit ThresholdSet(std::vector<int> values);

  std::span<const int> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const ThresholdSet&, const ThresholdSet&) = default;

 private:
  std::vector<int> values_;
};

/// {1, ..., 255}, or {0, ..., 255} with include_zero. The k = 0 plane is
/// identically one and duplicates an intercept column in the regression.
ThresholdSet thresholds_full(bool include_zero = false);
/// {1, 1 + s, 1 + 2s, ...} up to 255; s in [1, 255].
ThresholdSet thresholds_stride(int stride);
/// {1, 2, 4, ..., 128}.
ThresholdSet thresholds_bitplane();
/// Union of per-patch Otsu thresholds over a grid x grid partition. The last
/// patch row and column absorb leftover pixels; constant patches contribute
/// nothing. Throws cadenoise::Error if every patch is constant.
ThresholdSet thresholds_otsu_patches(const GrayImage& img, int grid);

/// Otsu threshold of a histogram: the k in [0, 255] maximizing between-class
/// variance for the split {v < k} / {v >= k}, smallest k on ties. Returns -1
/// when no split separates two nonempty classes.
int otsu_threshold(std::span<const std::size_t, 256> histogram);

struct BinaryStack {
  ThresholdSet thresholds;
  std::vector<BinaryImage> planes;  // planes[i] belongs to thresholds[i]

  std::size_t depth() const noexcept { return planes.size(); }
  Dims dims() const noexcept { return planes.empty() ? Dims{} : planes.front().dims(); }
};

/// plane_k(x, y) = 1 iff img(x, y) >= k.
BinaryStack decompose(const GrayImage& img, const ThresholdSet& thresholds);

/// Runs the automaton independently on every plane.
BinaryStack evolve_stack(const BinaryStack& stack, const CaRule& rule,
                         const NeighborhoodSpec& spec, int steps);

}  // namespace cadenoise
