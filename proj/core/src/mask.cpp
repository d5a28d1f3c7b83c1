#include "cadenoise/mask.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <stdexcept>

namespace cadenoise {

PixelMask uncorrupted_mask(const GrayImage& noisy) {
  PixelMask mask(noisy.width(), noisy.height());
  const auto px = noisy.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) mask.set(i, px[i] != 0 && px[i] != 255);
  return mask;
}

double grid_eta(int factor) {
  if (factor < 1) throw std::invalid_argument("grid factor must be >= 1");
  return 1.0 / (static_cast<double>(factor) * static_cast<double>(factor));
}

PixelMask sample_mask(const PixelMask& mask, double eta, std::uint64_t seed,
                      const SampleMode& mode) {
  const std::size_t total = mask.count();
  if (total == 0) throw std::invalid_argument("cannot sample from an empty mask");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");

  if (const auto* grid = std::get_if<GridSampling>(&mode)) {
    if (grid->factor < 1) throw std::invalid_argument("grid factor must be >= 1");
    PixelMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); y += grid->factor) {
      for (int x = 0; x < mask.width(); x += grid->factor) {
        if (mask.at(x, y)) out.set(x, y, true);
      }
    }
    return out;
  }

  if (eta == 1.0) return mask;

  // The small relative guard keeps products such as 0.1 * 10000 from
  // rounding up past an integer.
  const double want = std::ceil(eta * static_cast<double>(total) * (1.0 - 1e-12));
  const auto keep = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, total);

  const std::vector<std::size_t> candidates = mask.indices();
  std::vector<std::size_t> chosen;
  chosen.reserve(keep);
  std::mt19937_64 rng(seed);
  std::sample(candidates.begin(), candidates.end(), std::back_inserter(chosen), keep, rng);

  PixelMask out(mask.width(), mask.height());
  for (std::size_t i : chosen) out.set(i, true);
  return out;
}

}  // namespace cadenoise
