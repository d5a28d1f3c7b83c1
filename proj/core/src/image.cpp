#include "cadenoise/image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cadenoise {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : dims_{width, height} {
  check_dims(width, height);
  pixels_.assign(dims_.area(), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : dims_{width, height}, pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != dims_.area()) {
    throw std::invalid_argument("pixel buffer holds " + std::to_string(pixels_.size()) +
                                " values, expected " + std::to_string(dims_.area()));
  }
}

PixelMask::PixelMask(int width, int height, bool fill) : dims_{width, height} {
  check_dims(width, height);
  flags_.assign(dims_.area(), fill ? 1 : 0);
}

std::size_t PixelMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> PixelMask::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    if (flags_[i]) out.push_back(i);
  }
  return out;
}

}  // namespace cadenoise
