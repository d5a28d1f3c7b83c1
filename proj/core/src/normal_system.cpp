#include "cadenoise/normal_system.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cadenoise {

NormalSystem build_normal_system(const BinaryStack& stack, const GrayImage& noisy,
                                 const PixelMask& mask) {
  if (stack.planes.empty()) throw std::invalid_argument("empty binary stack");
  if (noisy.dims() != stack.dims() || mask.dims() != stack.dims()) {
    throw std::invalid_argument("normal system: stack, image and mask dimensions differ");
  }
  const std::vector<std::size_t> idx = mask.indices();
  if (idx.empty()) throw std::invalid_argument("normal system: empty mask");

  const std::size_t t = stack.depth();
  const std::size_t n = idx.size();
  const std::size_t words = (n + 63) / 64;

  // bits[k * words + j / 64] holds plane k at the j-th masked pixel.
  std::vector<std::uint64_t> bits(t * words, 0);
  for (std::size_t k = 0; k < t; ++k) {
    const auto cells = stack.planes[k].cells();
    std::uint64_t* row = bits.data() + k * words;
    for (std::size_t j = 0; j < n; ++j) {
      if (cells[idx[j]]) row[j >> 6] |= std::uint64_t{1} << (j & 63);
    }
  }

  NormalSystem sys;
  sys.depth = t;
  sys.samples = n;
  sys.gram.assign(t * t, 0.0);
  sys.rhs.assign(t, 0.0);

  for (std::size_t a = 0; a < t; ++a) {
    const std::uint64_t* ra = bits.data() + a * words;
    for (std::size_t b = a; b < t; ++b) {
      const std::uint64_t* rb = bits.data() + b * words;
      std::uint64_t c = 0;
      for (std::size_t j = 0; j < words; ++j) c += static_cast<std::uint64_t>(std::popcount(ra[j] & rb[j]));
      sys.gram[a * t + b] = sys.gram[b * t + a] = static_cast<double>(c);
    }
  }

  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    y[j] = static_cast<double>(noisy[idx[j]]);
    sys.target_sq += y[j] * y[j];
  }
  for (std::size_t k = 0; k < t; ++k) {
    const std::uint64_t* row = bits.data() + k * words;
    double s = 0.0;
    for (std::size_t wi = 0; wi < words; ++wi) {
      std::uint64_t m = row[wi];
      while (m) {
        s += y[wi * 64 + static_cast<std::size_t>(std::countr_zero(m))];
        m &= m - 1;
      }
    }
    sys.rhs[k] = s;
  }
  return sys;
}

double system_objective(const NormalSystem& sys, std::span<const double> w, double ridge) {
  const std::size_t t = sys.depth;
  double quad = 0.0;
  double lin = 0.0;
  double norm = 0.0;
  for (std::size_t r = 0; r < t; ++r) {
    double gw = 0.0;
    const double* row = sys.gram.data() + r * t;
    for (std::size_t c = 0; c < t; ++c) gw += row[c] * w[c];
    quad += w[r] * gw;
    lin += sys.rhs[r] * w[r];
    norm += w[r] * w[r];
  }
  return quad - 2.0 * lin + sys.target_sq + ridge * norm;
}

void system_gradient(const NormalSystem& sys, std::span<const double> w, double ridge,
                     std::vector<double>& out) {
  const std::size_t t = sys.depth;
  out.assign(t, 0.0);
  for (std::size_t r = 0; r < t; ++r) {
    double gw = 0.0;
    const double* row = sys.gram.data() + r * t;
    for (std::size_t c = 0; c < t; ++c) gw += row[c] * w[c];
    out[r] = 2.0 * (gw - sys.rhs[r] + ridge * w[r]);
  }
}

double gershgorin_bound(const NormalSystem& sys, double ridge) {
  double best = 0.0;
  for (std::size_t r = 0; r < sys.depth; ++r) {
    double s = ridge;
    for (std::size_t c = 0; c < sys.depth; ++c) s += std::abs(sys.g(r, c));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace cadenoise
