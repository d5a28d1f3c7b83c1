#include "cadenoise/noise.hpp"

#include <random>
#include <stdexcept>

namespace cadenoise {

GrayImage inject_spn(const GrayImage& img, const NoiseSpec& spec) {
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw std::invalid_argument("noise probability must lie in [0, 1]");
  }
  GrayImage out = img;
  if (spec.p == 0.0) return out;

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& px : out.pixels()) {
    // Two draws per pixel regardless of outcome keep the stream aligned, so
    // the corrupted set for a given seed grows monotonically with p.
    const double u = unit(rng);
    const double side = unit(rng);
    if (u < spec.p) px = side < 0.5 ? 0 : 255;
  }
  return out;
}

}  // namespace cadenoise
