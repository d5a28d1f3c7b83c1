#include "cadenoise/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace cadenoise {

namespace {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Separable box blur of a float field, replicate boundary.
void box_blur(std::vector<double>& f, int w, int h, int radius) {
  if (radius <= 0) return;
  std::vector<double> tmp(f.size());
  const double norm = 1.0 / (2 * radius + 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d) s += f[y * w + std::clamp(x + d, 0, w - 1)];
      tmp[y * w + x] = s * norm;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d) s += tmp[std::clamp(y + d, 0, h - 1) * w + x];
      f[y * w + x] = s * norm;
    }
  }
}

struct Blob {
  double cx, cy, rx, ry, level;
};

}  // namespace

GrayImage synthetic_natural_image(int width, int height, std::uint64_t seed) {
  GrayImage img(width, height);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  const double scale = std::min(width, height);

  std::vector<Blob> blobs;
  for (int i = 0; i < 7; ++i) {
    blobs.push_back({u(rng), u(rng), 0.06 + 0.18 * u(rng), 0.06 + 0.18 * u(rng),
                     -70.0 + 140.0 * u(rng)});
  }

  struct Wave {
    double fx, fy, phase, amp;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < 6; ++i) {
    const double freq = 3.0 + 14.0 * u(rng);  // cycles per image
    const double ang = std::numbers::pi * u(rng);
    waves.push_back({freq * std::cos(ang), freq * std::sin(ang),
                     2.0 * std::numbers::pi * u(rng), 3.0 + 5.0 * u(rng)});
  }

  // Band-limited grain: white noise blurred over ~1.5% of the image size.
  std::vector<double> grain(img.size());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& g : grain) g = gauss(rng);
  const int blur = std::max(1, static_cast<int>(std::lround(scale / 96.0)));
  box_blur(grain, width, height, blur);
  double grain_sd = 0.0;
  for (double g : grain) grain_sd += g * g;
  grain_sd = std::sqrt(grain_sd / static_cast<double>(grain.size()));

  const double edge = 0.004;  // edge softness, fraction of image size
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double nx = (x + 0.5) / width;
      const double ny = (y + 0.5) / height;
      double v = 70.0 + 80.0 * nx + 45.0 * ny * ny;
      for (const Blob& b : blobs) {
        const double dx = (nx - b.cx) / b.rx;
        const double dy = (ny - b.cy) / b.ry;
        const double dist = (std::sqrt(dx * dx + dy * dy) - 1.0) * std::min(b.rx, b.ry);
        v += b.level * logistic(-dist / edge);
      }
      for (const Wave& w : waves) {
        v += w.amp * std::sin(2.0 * std::numbers::pi * (w.fx * nx + w.fy * ny) + w.phase);
      }
      v += 10.0 * grain[static_cast<std::size_t>(y) * width + x] / grain_sd;
      img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 8L, 247L));
    }
  }
  return img;
}

}  // namespace cadenoise
