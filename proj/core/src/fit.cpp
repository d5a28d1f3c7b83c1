#include "cadenoise/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cadenoise/error.hpp"

namespace cadenoise {

void OptimizerConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("optimizer epochs must be >= 1");
  if (step_size && !(*step_size > 0.0)) throw std::invalid_argument("step size must be > 0");
  if (!(epsilon_init >= 0.0 && epsilon_init < 1.0)) {
    throw std::invalid_argument("epsilon_init must lie in [0, 1)");
  }
  if (!(ridge >= 0.0)) throw std::invalid_argument("ridge must be >= 0");
}

namespace {

constexpr int kMaxHalvings = 64;

void matvec(const NormalSystem& sys, const std::vector<double>& v, std::vector<double>& out) {
  const std::size_t t = sys.depth;
  out.resize(t);
  for (std::size_t r = 0; r < t; ++r) {
    const double* row = sys.gram.data() + r * t;
    double s = 0.0;
    for (std::size_t c = 0; c < t; ++c) s += row[c] * v[c];
    out[r] = s;
  }
}

// f(v) from v and Gv, so each epoch needs a single matrix-vector product.
double value(const NormalSystem& sys, const std::vector<double>& v, const std::vector<double>& gv,
             double ridge) {
  double quad = 0.0, lin = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < sys.depth; ++i) {
    quad += v[i] * gv[i];
    lin += sys.rhs[i] * v[i];
    norm += v[i] * v[i];
  }
  return quad - 2.0 * lin + sys.target_sq + ridge * norm;
}

// f(c) - f(w) evaluated without the large constant y'y, so that progress near
// the optimum is not swamped by cancellation.
double delta(const NormalSystem& sys, const std::vector<double>& w, const std::vector<double>& gw,
             const std::vector<double>& c, const std::vector<double>& gc, double ridge) {
  double d = 0.0;
  for (std::size_t i = 0; i < sys.depth; ++i) {
    const double di = c[i] - w[i];
    d += di * (gc[i] + gw[i] - 2.0 * sys.rhs[i] + ridge * (c[i] + w[i]));
  }
  return d;
}

}  // namespace

FitResult fit_weights(const NormalSystem& sys, const OptimizerConfig& cfg,
                      const EpochObserver& observer) {
  cfg.validate();
  if (sys.samples == 0) throw std::invalid_argument("fit_weights: empty mask");
  const std::size_t t = sys.depth;
  const double ridge = cfg.ridge;

  WeightVector w = init_weights(t, cfg.epsilon_init, cfg.seed);
  w.nonneg_constrained = cfg.nonneg;

  double step = 0.0;
  if (cfg.step_size) {
    step = *cfg.step_size;
  } else {
    const double bound = gershgorin_bound(sys, ridge);
    step = bound > 0.0 ? 1.0 / (2.0 * bound) : 1.0;
  }

  std::vector<double> gw, grad(t), cand(t), gc;
  matvec(sys, w.weights, gw);
  double f = value(sys, w.weights, gw, ridge);
  if (!std::isfinite(f)) throw DivergenceError("fit_weights: initial objective is not finite");

  FitResult result;
  result.initial_objective = f;
  result.sampled_pixel_count = sys.samples;
  result.objective_history.reserve(static_cast<std::size_t>(cfg.epochs));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = 0; i < t; ++i) grad[i] = 2.0 * (gw[i] - sys.rhs[i] + ridge * w.weights[i]);

    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
      for (std::size_t i = 0; i < t; ++i) {
        cand[i] = w.weights[i] - step * grad[i];
        if (cfg.nonneg) cand[i] = std::max(cand[i], 0.0);
      }
      matvec(sys, cand, gc);
      const double fc = value(sys, cand, gc, ridge);
      const double change = delta(sys, w.weights, gw, cand, gc, ridge);
      if (!std::isfinite(fc) || !std::isfinite(change)) {
        throw DivergenceError("fit_weights: objective became non-finite at epoch " +
                              std::to_string(epoch) + "; reduce the step size");
      }
      if (change <= 0.0) {
        w.weights.swap(cand);
        gw.swap(gc);
        f = std::min(f, fc);
        break;
      }
      step *= 0.5;
    }
    result.objective_history.push_back(f);
    if (observer) observer(epoch, w.weights, f);
  }

  result.weights = std::move(w);
  result.final_step_size = step;
  return result;
}

FitResult fit_weights(const BinaryStack& stack, const GrayImage& noisy, const PixelMask& mask,
                      const OptimizerConfig& cfg, const EpochObserver& observer) {
  cfg.validate();
  if (mask.count() == 0) throw std::invalid_argument("fit_weights: empty mask");
  return fit_weights(build_normal_system(stack, noisy, mask), cfg, observer);
}

}  // namespace cadenoise
