#include "cadenoise/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace cadenoise {

double mse(const GrayImage& ref, const GrayImage& approx) {
  if (ref.dims() != approx.dims()) {
    throw std::invalid_argument("mse: image dimensions differ");
  }
  const auto a = ref.pixels();
  const auto b = approx.pixels();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    acc += static_cast<double>(d * d);
  }
  return acc / static_cast<double>(a.size());
}

double psnr_from_mse(double mse_value) {
  if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

double psnr(const GrayImage& ref, const GrayImage& approx) {
  return psnr_from_mse(mse(ref, approx));
}

std::string format_psnr(double db) {
  if (std::isinf(db) && db > 0) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", db);
  return buf;
}

}  // namespace cadenoise
