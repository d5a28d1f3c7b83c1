#include "cadenoise/median.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace cadenoise {

GrayImage median_filter(const GrayImage& img, int window) {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("median window must be odd and >= 3");
  }
  const int r = window / 2;
  const int w = img.width();
  const int h = img.height();
  GrayImage out(w, h);
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(window) * window);
  const auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t n = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const int yy = std::clamp(y + dy, 0, h - 1);
        for (int dx = -r; dx <= r; ++dx) buf[n++] = img.at(std::clamp(x + dx, 0, w - 1), yy);
      }
      std::nth_element(buf.begin(), mid, buf.end());
      out.at(x, y) = *mid;
    }
  }
  return out;
}

}  // namespace cadenoise
