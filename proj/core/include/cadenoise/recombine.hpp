#pragma once

#include <cstdint>
#include <vector>

#include "cadenoise/image.hpp"
#include "cadenoise/thresholds.hpp"

namespace cadenoise {

struct WeightVector {
  std::vector<double> weights;     // one per plane, in threshold order
  bool nonneg_constrained = false;

  std::size_t size() const noexcept { return weights.size(); }
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Real-valued image, used before clamping.
struct RealImage {
  Dims dims;
  std::vector<double> values;
};

/// y(x, y) = sum_k w_k * plane_k(x, y), without clamping or rounding.
/// Throws std::invalid_argument if the weight count differs from the depth.
RealImage recombine_unclamped(const BinaryStack& stack, const WeightVector& w);

/// Recombination clamped to [0, 255] and rounded half away from zero.
GrayImage recombine(const BinaryStack& stack, const WeightVector& w);

/// All weights equal to one.
WeightVector unit_weights(std::size_t count);

/// Weights drawn independently from U[(1-eps) mu, (1+eps) mu], mu = 255 / count.
WeightVector init_weights(std::size_t count, double epsilon, std::uint64_t seed);

/// Sum over masked pixels of (unclamped recombination - noisy)^2, evaluated
/// pixel by pixel. Throws std::invalid_argument on an empty mask or
/// inconsistent dimensions.
double objective(const BinaryStack& stack, const WeightVector& w, const GrayImage& noisy,
                 const PixelMask& mask);

}  // namespace cadenoise
