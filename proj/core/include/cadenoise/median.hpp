#pragma once

#include "cadenoise/image.hpp"

namespace cadenoise {

/// window x window median with replicate boundary. `window` must be odd and
/// at least 3.
GrayImage median_filter(const GrayImage& img, int window = 3);

}  // namespace cadenoise
