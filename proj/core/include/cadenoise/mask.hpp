#pragma once

#include <cstdint>
#include <variant>

#include "cadenoise/image.hpp"

namespace cadenoise {

/// Pixels whose observed value is strictly between 0 and 255. Genuine 0/255
/// content is excluded along with the impulses.
PixelMask uncorrupted_mask(const GrayImage& noisy);

struct RandomSampling {};
/// Keep only lattice points (x, y) with x % factor == 0 and y % factor == 0.
struct GridSampling {
  int factor = 1;
};
using SampleMode = std::variant<RandomSampling, GridSampling>;

/// Subsample the true flags of `mask`.
///
/// Random mode keeps exactly ceil(eta * count) flags drawn uniformly without
/// replacement; grid mode ignores eta and intersects the mask with the
/// segmentation lattice anchored at (0, 0). Throws std::invalid_argument on an
/// empty input mask, eta outside (0, 1] or a grid factor below 1.
PixelMask sample_mask(const PixelMask& mask, double eta, std::uint64_t seed,
                      const SampleMode& mode = RandomSampling{});

/// Fraction of pixels a grid factor retains: 1 / factor^2.
double grid_eta(int factor);

}  // namespace cadenoise
