#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cadenoise/image.hpp"
#include "cadenoise/thresholds.hpp"

namespace cadenoise {

// Sufficient statistics of the masked least-squares problem
//   f(w) = sum_i (a_i . w - y_i)^2 = w'Gw - 2 b'w + y'y
// where a_i is the plane bit vector at masked pixel i. Planes are packed into
// 64-bit words over the masked pixels so each Gram entry is a popcount.
struct NormalSystem {
  std::size_t depth = 0;
  std::size_t samples = 0;
  std::vector<double> gram;  // depth x depth, row-major, symmetric
  std::vector<double> rhs;   // b
  double target_sq = 0.0;    // y'y

  double g(std::size_t r, std::size_t c) const { return gram[r * depth + c]; }
};

NormalSystem build_normal_system(const BinaryStack& stack, const GrayImage& noisy,
                                 const PixelMask& mask);

/// f(w) + ridge * |w|^2.
double system_objective(const NormalSystem& sys, std::span<const double> w, double ridge = 0.0);

/// Gradient 2(Gw - b) + 2 ridge w, written into `out` (resized).
void system_gradient(const NormalSystem& sys, std::span<const double> w, double ridge,
                     std::vector<double>& out);

/// Largest absolute row sum of G + ridge I. Bounds the largest eigenvalue.
double gershgorin_bound(const NormalSystem& sys, double ridge = 0.0);

}  // namespace cadenoise
