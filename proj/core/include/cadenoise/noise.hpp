#pragma once

#include <cstdint>

#include "cadenoise/image.hpp"

namespace cadenoise {

struct NoiseSpec {
  double p = 0.0;          // per-pixel corruption probability
  std::uint64_t seed = 0;
};

/// Salt-and-pepper noise: each pixel is independently replaced with
/// probability p by 0 or 255 (equal odds). Deterministic in spec.seed.
GrayImage inject_spn(const GrayImage& img, const NoiseSpec& spec);

}  // namespace cadenoise
