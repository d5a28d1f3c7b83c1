#pragma once

#include <cstdint>
#include <random>

#include "cadenoise/image.hpp"
#include "cadenoise/thresholds.hpp"
#include "support/test_util.hpp"

namespace cadenoise::testing {

// Small least-squares instance: `depth` independent random planes (linearly
// independent with overwhelming probability once pixels >> depth) and a
// target that is a noisy linear combination of them.
struct LsqInstance {
  BinaryStack stack;
  GrayImage target;
  PixelMask mask;
};

inline LsqInstance random_instance(std::size_t depth, int w, int h, std::uint64_t seed,
                                   double mask_density = 0.8) {
  std::mt19937_64 rng(seed);
  std::vector<int> ks;
  for (std::size_t k = 0; k < depth; ++k) ks.push_back(static_cast<int>(k + 1));
  LsqInstance inst{BinaryStack{ThresholdSet(ks), {}}, GrayImage(w, h), PixelMask(w, h)};

  std::uniform_real_distribution<double> dens(0.25, 0.75);
  for (std::size_t k = 0; k < depth; ++k) {
    inst.stack.planes.push_back(random_binary(w, h, rng(), dens(rng)));
  }
  std::uniform_real_distribution<double> coef(-10.0, 40.0);
  std::vector<double> truth(depth);
  for (double& c : truth) c = coef(rng);
  std::normal_distribution<double> noise(0.0, 6.0);
  std::bernoulli_distribution keep(mask_density);
  for (std::size_t i = 0; i < inst.target.size(); ++i) {
    double v = 60.0 + noise(rng);
    for (std::size_t k = 0; k < depth; ++k) v += inst.stack.planes[k][i] ? truth[k] : 0.0;
    inst.target[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 1L, 254L));
    inst.mask.set(i, keep(rng));
  }
  return inst;
}

}  // namespace cadenoise::testing
