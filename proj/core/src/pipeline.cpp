#include "cadenoise/pipeline.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

#include "cadenoise/error.hpp"
#include "cadenoise/random.hpp"
#include "cadenoise/weights_io.hpp"

namespace cadenoise {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

int parse_suffix_int(std::string_view text, std::string_view prefix) {
  const std::string_view digits = text.substr(prefix.size());
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("expected an integer after '" + std::string(prefix) + "' in '" +
                                std::string(text) + "'");
  }
  return value;
}

// Sub-stream tag for mask sampling, so it never reuses the weight-init stream.
constexpr std::uint64_t kSamplingStream = 0x73616d706c65ULL;

}  // namespace

ThresholdStrategy parse_threshold_strategy(std::string_view text) {
  if (text == "full") return FullThresholds{false};
  if (text == "full0") return FullThresholds{true};
  if (text == "bitplane") return BitplaneThresholds{};
  if (text.starts_with("stride:")) return StrideThresholds{parse_suffix_int(text, "stride:")};
  if (text.starts_with("otsu:")) return OtsuThresholds{parse_suffix_int(text, "otsu:")};
  throw std::invalid_argument("unknown threshold strategy '" + std::string(text) +
                              "' (full, full0, stride:<s>, bitplane, otsu:<g>)");
}

std::string to_string(const ThresholdStrategy& strategy) {
  return std::visit(
      Overloaded{
          [](const FullThresholds& f) -> std::string { return f.include_zero ? "full0" : "full"; },
          [](const StrideThresholds& s) -> std::string { return "stride:" + std::to_string(s.stride); },
          [](const BitplaneThresholds&) -> std::string { return "bitplane"; },
          [](const OtsuThresholds& o) -> std::string { return "otsu:" + std::to_string(o.grid); },
      },
      strategy);
}

ThresholdSet make_thresholds(const ThresholdStrategy& strategy, const GrayImage& img) {
  return std::visit(
      Overloaded{
          [](const FullThresholds& f) { return thresholds_full(f.include_zero); },
          [](const StrideThresholds& s) { return thresholds_stride(s.stride); },
          [](const BitplaneThresholds&) { return thresholds_bitplane(); },
          [&img](const OtsuThresholds& o) { return thresholds_otsu_patches(img, o.grid); },
      },
      strategy);
}

SampleMode parse_sample_mode(std::string_view text) {
  if (text == "random") return RandomSampling{};
  if (text.starts_with("grid:")) {
    const int k = parse_suffix_int(text, "grid:");
    if (k < 1) throw std::invalid_argument("grid factor must be >= 1");
    return GridSampling{k};
  }
  throw std::invalid_argument("unknown sample mode '" + std::string(text) +
                              "' (random, grid:<k>)");
}

std::string to_string(const SampleMode& mode) {
  if (const auto* g = std::get_if<GridSampling>(&mode)) return "grid:" + std::to_string(g->factor);
  return "random";
}

void PipelineConfig::validate() const {
  if (ca_steps < 0) throw std::invalid_argument("ca_steps must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  (void)neighborhood.cell_count();
  if (const auto* g = std::get_if<GridSampling>(&sample_mode); g && g->factor < 1) {
    throw std::invalid_argument("grid factor must be >= 1");
  }
  optimizer.validate();
}

ProcessedStack process_stack(const GrayImage& noisy, const PipelineConfig& cfg) {
  cfg.validate();
  const ThresholdSet ks = make_thresholds(cfg.thresholds, noisy);
  const BinaryStack raw = decompose(noisy, ks);
  return ProcessedStack{evolve_stack(raw, CaRule(cfg.rule), cfg.neighborhood, cfg.ca_steps)};
}

PixelMask regression_mask(const GrayImage& noisy, const PipelineConfig& cfg) {
  const PixelMask full = uncorrupted_mask(noisy);
  if (full.count() == 0) {
    throw Error("no uncorrupted pixels (every pixel is 0 or 255); cannot fit weights");
  }
  if (cfg.eta == 1.0 && std::holds_alternative<RandomSampling>(cfg.sample_mode)) return full;
  return sample_mask(full, cfg.eta, derive_seed(cfg.optimizer.seed, {kSamplingStream}),
                     cfg.sample_mode);
}

DenoiseResult finish_pipeline(const ProcessedStack& processed, const GrayImage& noisy,
                              const PipelineConfig& cfg) {
  const BinaryStack& stack = processed.planes;
  DenoiseResult result;
  result.thresholds = stack.thresholds;

  if (cfg.weights_in) {
    WeightFile loaded = load_weights(*cfg.weights_in);
    if (loaded.thresholds != stack.thresholds) {
      throw Error("weight file " + cfg.weights_in->string() + " was fit for " +
                  std::to_string(loaded.thresholds.size()) +
                  " thresholds that do not match the configured strategy (" +
                  std::to_string(stack.thresholds.size()) + " thresholds)");
    }
    result.weights = std::move(loaded.weights);
  } else if (cfg.force_unit_weights) {
    result.weights = unit_weights(stack.depth());
  } else {
    const PixelMask mask = regression_mask(noisy, cfg);
    result.fit = fit_weights(stack, noisy, mask, cfg.optimizer);
    result.weights = result.fit->weights;
  }

  if (cfg.weights_out) {
    WeightFile out{stack.thresholds, result.weights, {}};
    out.provenance.noise_p = cfg.noise_p_hint;
    out.provenance.seed = cfg.optimizer.seed;
    if (result.fit) {
      out.provenance.epochs = cfg.optimizer.epochs;
      out.provenance.eta = cfg.eta;
    }
    save_weights(out, *cfg.weights_out);
  }

  result.image = recombine(stack, result.weights);
  return result;
}

DenoiseResult denoise_pipeline(const GrayImage& noisy, const PipelineConfig& cfg) {
  return finish_pipeline(process_stack(noisy, cfg), noisy, cfg);
}

GrayImage unit_weight_baseline(const GrayImage& noisy, const PipelineConfig& cfg) {
  PipelineConfig unit = cfg;
  unit.force_unit_weights = true;
  unit.weights_in.reset();
  unit.weights_out.reset();
  return denoise_pipeline(noisy, unit).image;
}

}  // namespace cadenoise
