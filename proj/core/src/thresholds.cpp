#include "cadenoise/thresholds.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "cadenoise/error.hpp"

namespace cadenoise {

ThresholdSet::ThresholdSet(std::vector<int> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("threshold set must not be empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] > 255) {
      throw std::invalid_argument("threshold " + std::to_string(values_[i]) +
                                  " outside [0, 255]");
    }
    if (i > 0 && values_[i] <= values_[i - 1]) {
      throw std::invalid_argument("thresholds must be strictly increasing");
    }
  }
}

ThresholdSet thresholds_full(bool include_zero) {
  std::vector<int> v;
  for (int k = include_zero ? 0 : 1; k <= 255; ++k) v.push_back(k);
  return ThresholdSet(std::move(v));
}

ThresholdSet thresholds_stride(int stride) {
  if (stride < 1 || stride > 255) {
    throw std::invalid_argument("threshold stride must lie in [1, 255]");
  }
  std::vector<int> v;
  for (int k = 1; k <= 255; k += stride) v.push_back(k);
  return ThresholdSet(std::move(v));
}

ThresholdSet thresholds_bitplane() { return ThresholdSet({1, 2, 4, 8, 16, 32, 64, 128}); }

int otsu_threshold(std::span<const std::size_t, 256> histogram) {
  double total = 0.0;
  double total_sum = 0.0;
  for (int v = 0; v < 256; ++v) {
    total += static_cast<double>(histogram[v]);
    total_sum += static_cast<double>(v) * static_cast<double>(histogram[v]);
  }

  // Between-class variance for the split {v < k} / {v >= k}:
  //   w0 w1 (mu0 - mu1)^2, with cumulative counts and sums over v < k.
  int best_k = -1;
  double best = 0.0;
  double below = 0.0;
  double below_sum = 0.0;
  for (int k = 0; k < 256; ++k) {
    if (k > 0) {
      below += static_cast<double>(histogram[k - 1]);
      below_sum += static_cast<double>(k - 1) * static_cast<double>(histogram[k - 1]);
    }
    const double above = total - below;
    if (below == 0.0 || above == 0.0) continue;
    const double mu0 = below_sum / below;
    const double mu1 = (total_sum - below_sum) / above;
    const double var = (below / total) * (above / total) * (mu0 - mu1) * (mu0 - mu1);
    if (best_k < 0 || var > best * (1.0 + 1e-12)) {
      best = var;
      best_k = k;
    }
  }
  return best_k;
}

ThresholdSet thresholds_otsu_patches(const GrayImage& img, int grid) {
  if (grid < 1) throw std::invalid_argument("patch grid must be >= 1");
  if (img.width() < grid || img.height() < grid) {
    throw std::invalid_argument("image is smaller than the patch grid");
  }
  const int pw = img.width() / grid;
  const int ph = img.height() / grid;

  std::vector<int> found;
  for (int gy = 0; gy < grid; ++gy) {
    const int y0 = gy * ph;
    const int y1 = gy == grid - 1 ? img.height() : y0 + ph;
    for (int gx = 0; gx < grid; ++gx) {
      const int x0 = gx * pw;
      const int x1 = gx == grid - 1 ? img.width() : x0 + pw;
      std::array<std::size_t, 256> hist{};
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) ++hist[img.at(x, y)];
      }
      const int k = otsu_threshold(hist);
      if (k >= 0) found.push_back(k);
    }
  }
  if (found.empty()) throw Error("every patch is constant; Otsu yields no thresholds");
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return ThresholdSet(std::move(found));
}

BinaryStack decompose(const GrayImage& img, const ThresholdSet& thresholds) {
  BinaryStack stack{thresholds, {}};
  stack.planes.reserve(thresholds.size());
  const auto px = img.pixels();
  for (int k : thresholds.values()) {
    std::vector<std::uint8_t> cells(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) cells[i] = px[i] >= k ? 1 : 0;
    stack.planes.emplace_back(img.width(), img.height(), std::move(cells));
  }
  return stack;
}

BinaryStack evolve_stack(const BinaryStack& stack, const CaRule& rule,
                         const NeighborhoodSpec& spec, int steps) {
  BinaryStack out{stack.thresholds, {}};
  out.planes.reserve(stack.planes.size());
  for (const auto& plane : stack.planes) out.planes.push_back(evolve(plane, rule, spec, steps));
  return out;
}

}  // namespace cadenoise
