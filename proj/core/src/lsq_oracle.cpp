#include "cadenoise/lsq_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cadenoise/error.hpp"

namespace cadenoise {

namespace {

using Matrix = std::vector<std::vector<double>>;

// Solves A x = b in place by Gaussian elimination with partial pivoting.
std::vector<double> gauss_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  const double tol = std::max(scale, 1.0) * 1e-11;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) <= tol) {
      throw SingularSystemError("normal equations are singular (column " + std::to_string(col) +
                                "); retry with ridge > 0");
    }
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = a[r][col] / a[col][col];
      if (m == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<double> solve_subset(const Matrix& g, const std::vector<double>& rhs,
                                 const std::vector<std::size_t>& free) {
  Matrix sub(free.size(), std::vector<double>(free.size()));
  std::vector<double> sb(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    sb[i] = rhs[free[i]];
    for (std::size_t j = 0; j < free.size(); ++j) sub[i][j] = g[free[i]][free[j]];
  }
  return gauss_solve(std::move(sub), std::move(sb));
}

// Lawson-Hanson active set on the normal equations.
std::vector<double> nonneg_solve(const Matrix& g, const std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  std::vector<double> x(n, 0.0);
  std::vector<bool> is_free(n, false);

  double scale = 0.0;
  for (double v : rhs) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * std::max(scale, 1.0);

  for (std::size_t outer = 0; outer < 3 * n + 10; ++outer) {
    // Negative half-gradient b - Gx; positive entries on the bound set
    // violate optimality.
    std::size_t enter = n;
    double best = tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_free[j]) continue;
      double d = rhs[j];
      for (std::size_t c = 0; c < n; ++c) d -= g[j][c] * x[c];
      if (d > best) {
        best = d;
        enter = j;
      }
    }
    if (enter == n) return x;
    is_free[enter] = true;

    for (std::size_t inner = 0; inner < 3 * n + 10; ++inner) {
      std::vector<std::size_t> free;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_free[j]) free.push_back(j);
      }
      const std::vector<double> s = solve_subset(g, rhs, free);
      bool feasible = true;
      for (double v : s) feasible = feasible && v > 0.0;
      if (feasible) {
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t i = 0; i < free.size(); ++i) x[free[i]] = s[i];
        break;
      }
      // Move toward s until the first free coordinate hits zero, then bind it.
      double alpha = 1.0;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (s[i] <= 0.0) {
          const double xi = x[free[i]];
          alpha = std::min(alpha, xi / (xi - s[i]));
        }
      }
      for (std::size_t i = 0; i < free.size(); ++i) {
        const std::size_t j = free[i];
        x[j] += alpha * (s[i] - x[j]);
        if (x[j] <= 1e-15 * std::max(1.0, std::abs(s[i]))) {
          x[j] = 0.0;
          is_free[j] = false;
        }
      }
    }
  }
  return x;
}

}  // namespace

WeightVector solve_least_squares_oracle(const BinaryStack& stack, const GrayImage& noisy,
                                        const PixelMask& mask, bool nonneg, double ridge) {
  if (!(ridge >= 0.0)) throw std::invalid_argument("ridge must be >= 0");
  if (noisy.dims() != stack.dims() || mask.dims() != stack.dims()) {
    throw std::invalid_argument("oracle: stack, image and mask dimensions differ");
  }
  const std::size_t t = stack.depth();
  if (t == 0 || t > 512) throw std::invalid_argument("oracle: plane count must lie in [1, 512]");
  const std::vector<std::size_t> idx = mask.indices();
  if (idx.empty()) throw std::invalid_argument("oracle: empty mask");

  Matrix g(t, std::vector<double>(t, 0.0));
  std::vector<double> rhs(t, 0.0);
  std::vector<std::size_t> on;
  on.reserve(t);
  for (std::size_t i : idx) {
    on.clear();
    for (std::size_t k = 0; k < t; ++k) {
      if (stack.planes[k][i]) on.push_back(k);
    }
    const double y = static_cast<double>(noisy[i]);
    for (std::size_t a : on) {
      rhs[a] += y;
      for (std::size_t b : on) g[a][b] += 1.0;
    }
  }
  for (std::size_t k = 0; k < t; ++k) g[k][k] += ridge;

  WeightVector out;
  out.nonneg_constrained = nonneg;
  if (nonneg) {
    out.weights = nonneg_solve(g, rhs);
  } else {
    std::vector<std::size_t> all(t);
    for (std::size_t k = 0; k < t; ++k) all[k] = k;
    out.weights = solve_subset(g, rhs, all);
  }
  return out;
}

}  // namespace cadenoise
