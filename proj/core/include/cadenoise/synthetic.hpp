#pragma once

#include <cstdint>

#include "cadenoise/image.hpp"

namespace cadenoise {

// Deterministic test image with natural-image statistics: smooth illumination
// gradient, a few piecewise-constant objects with soft edges, and band-limited
// texture. Intensities stay inside [8, 247].
GrayImage synthetic_natural_image(int width, int height, std::uint64_t seed = 1);

}  // namespace cadenoise
