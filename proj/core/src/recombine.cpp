#include "cadenoise/recombine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cadenoise {

namespace {

void check_depth(const BinaryStack& stack, const WeightVector& w) {
  if (w.size() != stack.depth()) {
    throw std::invalid_argument("weight count " + std::to_string(w.size()) +
                                " does not match stack depth " +
                                std::to_string(stack.depth()));
  }
  if (stack.planes.empty()) throw std::invalid_argument("empty binary stack");
}

}  // namespace

RealImage recombine_unclamped(const BinaryStack& stack, const WeightVector& w) {
  check_depth(stack, w);
  RealImage out{stack.dims(), std::vector<double>(stack.dims().area(), 0.0)};
  for (std::size_t k = 0; k < stack.depth(); ++k) {
    const double wk = w.weights[k];
    const auto cells = stack.planes[k].cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i]) out.values[i] += wk;
    }
  }
  return out;
}

GrayImage recombine(const BinaryStack& stack, const WeightVector& w) {
  const RealImage raw = recombine_unclamped(stack, w);
  GrayImage out(raw.dims.width, raw.dims.height);
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    // std::round rounds halves away from zero.
    px[i] = static_cast<std::uint8_t>(std::round(std::clamp(raw.values[i], 0.0, 255.0)));
  }
  return out;
}

WeightVector unit_weights(std::size_t count) {
  return WeightVector{std::vector<double>(count, 1.0), false};
}

WeightVector init_weights(std::size_t count, double epsilon, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("init_weights: plane count must be >= 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("init_weights: epsilon must lie in [0, 1)");
  }
  const double mu = 255.0 / static_cast<double>(count);
  WeightVector w{std::vector<double>(count, mu), false};
  if (epsilon == 0.0) return w;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist((1.0 - epsilon) * mu, (1.0 + epsilon) * mu);
  for (double& v : w.weights) v = dist(rng);
  return w;
}

double objective(const BinaryStack& stack, const WeightVector& w, const GrayImage& noisy,
                 const PixelMask& mask) {
  check_depth(stack, w);
  if (noisy.dims() != stack.dims() || mask.dims() != stack.dims()) {
    throw std::invalid_argument("objective: stack, image and mask dimensions differ");
  }
  const std::vector<std::size_t> idx = mask.indices();
  if (idx.empty()) throw std::invalid_argument("objective: empty mask");

  std::vector<double> pred(idx.size(), 0.0);
  for (std::size_t k = 0; k < stack.depth(); ++k) {
    const auto cells = stack.planes[k].cells();
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (cells[idx[j]]) pred[j] += w.weights[k];
    }
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const double r = pred[j] - static_cast<double>(noisy[idx[j]]);
    acc += r * r;
  }
  return acc;
}

}  // namespace cadenoise
