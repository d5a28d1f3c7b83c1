#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cadenoise/image.hpp"
#include "cadenoise/normal_system.hpp"
#include "cadenoise/recombine.hpp"
#include "cadenoise/thresholds.hpp"

namespace cadenoise {

inline constexpr int kDefaultEpochs = 200;
/// Epoch budget of the weight-stability experiment.
inline constexpr int kStabilityEpochs = 7560;

struct OptimizerConfig {
  int epochs = kDefaultEpochs;
  /// Fixed gradient step. When unset, 1 / (2 * gershgorin_bound), which
  /// never exceeds 1 / L for the quadratic's Lipschitz constant L.
  std::optional<double> step_size;
  double epsilon_init = 0.05;
  double ridge = 0.0;
  bool nonneg = false;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument if epochs < 1, step_size <= 0,
  /// epsilon_init outside [0, 1) or ridge < 0.
  void validate() const;
};

struct FitResult {
  WeightVector weights;
  std::vector<double> objective_history;  // one entry per epoch, non-increasing
  double initial_objective = 0.0;
  std::size_t sampled_pixel_count = 0;
  double final_step_size = 0.0;
};

/// Called after every epoch with the epoch index, current weights and objective.
using EpochObserver = std::function<void(int, std::span<const double>, double)>;

/// Gradient descent from init_weights(). A step that would raise the
/// objective is retried with half the step size, so the recorded history is
/// non-increasing. With cfg.nonneg each step is projected onto w >= 0.
///
/// Throws std::invalid_argument on an empty mask and DivergenceError if the
/// objective stops being finite.
FitResult fit_weights(const BinaryStack& stack, const GrayImage& noisy, const PixelMask& mask,
                      const OptimizerConfig& cfg, const EpochObserver& observer = {});

/// Same optimizer on precomputed sufficient statistics.
FitResult fit_weights(const NormalSystem& sys, const OptimizerConfig& cfg,
                      const EpochObserver& observer = {});

}  // namespace cadenoise
