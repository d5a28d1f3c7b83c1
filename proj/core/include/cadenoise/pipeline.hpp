#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cadenoise/ca.hpp"
#include "cadenoise/fit.hpp"
#include "cadenoise/image.hpp"
#include "cadenoise/mask.hpp"
#include "cadenoise/recombine.hpp"
#include "cadenoise/thresholds.hpp"

namespace cadenoise {

struct FullThresholds {
  bool include_zero = false;
};
struct StrideThresholds {
  int stride = 3;
};
struct BitplaneThresholds {};
struct OtsuThresholds {
  int grid = 4;
};
using ThresholdStrategy =
    std::variant<FullThresholds, StrideThresholds, BitplaneThresholds, OtsuThresholds>;

/// Accepts "full", "full0" (with k = 0), "stride:<s>", "bitplane", "otsu:<g>".
ThresholdStrategy parse_threshold_strategy(std::string_view text);
std::string to_string(const ThresholdStrategy& strategy);
ThresholdSet make_thresholds(const ThresholdStrategy& strategy, const GrayImage& img);

/// Accepts "random" or "grid:<k>".
SampleMode parse_sample_mode(std::string_view text);
std::string to_string(const SampleMode& mode);

struct PipelineConfig {
  ThresholdStrategy thresholds = FullThresholds{};
  RuleId rule = RuleId::kMajority;
  NeighborhoodSpec neighborhood{};
  int ca_steps = 1;
  double eta = 1.0;
  SampleMode sample_mode = RandomSampling{};
  OptimizerConfig optimizer{};
  bool force_unit_weights = false;
  std::optional<std::filesystem::path> weights_in;
  std::optional<std::filesystem::path> weights_out;
  std::optional<double> noise_p_hint;  // provenance only, written to weights_out

  void validate() const;
};

/// Thresholded and CA-evolved planes of one noisy image.
struct ProcessedStack {
  BinaryStack planes;
};

ProcessedStack process_stack(const GrayImage& noisy, const PipelineConfig& cfg);

/// Uncorrupted pixels of `noisy`, subsampled per cfg.eta / cfg.sample_mode.
PixelMask regression_mask(const GrayImage& noisy, const PipelineConfig& cfg);

struct DenoiseResult {
  GrayImage image;
  ThresholdSet thresholds;
  WeightVector weights;
  std::optional<FitResult> fit;  // empty when weights were loaded or forced
};

/// Threshold, evolve each plane, fit weights on the sampled uncorrupted
/// pixels (unless weights are loaded or forced to one) and recombine with
/// clamping.
DenoiseResult denoise_pipeline(const GrayImage& noisy, const PipelineConfig& cfg);

/// Weight-fitting and recombination stage on an already evolved stack.
DenoiseResult finish_pipeline(const ProcessedStack& processed, const GrayImage& noisy,
                              const PipelineConfig& cfg);

/// Pipeline with every weight forced to one.
GrayImage unit_weight_baseline(const GrayImage& noisy, const PipelineConfig& cfg);

}  // namespace cadenoise
