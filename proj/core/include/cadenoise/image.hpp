#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cadenoise {

struct Dims {
  int width = 0;
  int height = 0;

  std::size_t area() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Row-major 8-bit grayscale image. Dimensions are strictly positive.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }
  std::uint8_t operator[](std::size_t i) const { return pixels_[i]; }
  std::uint8_t& operator[](std::size_t i) { return pixels_[i]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  Dims dims_;
  std::vector<std::uint8_t> pixels_;
};

/// Boolean grid marking the pixels that take part in the weight regression.
class PixelMask {
 public:
  PixelMask() = default;
  PixelMask(int width, int height, bool fill = false);

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return flags_.size(); }

  bool at(int x, int y) const { return flags_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { flags_[index(x, y)] = v ? 1 : 0; }
  bool operator[](std::size_t i) const { return flags_[i] != 0; }
  void set(std::size_t i, bool v) { flags_[i] = v ? 1 : 0; }

  std::size_t count() const noexcept;
  /// Row-major linear indices of the true flags, ascending.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const PixelMask&, const PixelMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  Dims dims_;
  std::vector<std::uint8_t> flags_;
};

}  // namespace cadenoise
