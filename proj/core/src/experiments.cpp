#include "cadenoise/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "cadenoise/median.hpp"
#include "cadenoise/metrics.hpp"
#include "cadenoise/noise.hpp"
#include "cadenoise/random.hpp"

namespace cadenoise {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_ms(const std::optional<double>& ms) { return ms ? fmt("%.1f", *ms) : "na"; }

std::uint64_t fit_seed(std::uint64_t seed, double p) {
  return derive_seed(seed, {static_cast<std::uint64_t>(std::llround(p * 1e6)), 0x666974ULL});
}

// Harness-level config: weights are always fit in memory, never read or written.
PipelineConfig fitting_config(const PipelineConfig& base, double eta, const SampleMode& mode,
                              std::uint64_t seed) {
  PipelineConfig cfg = base;
  cfg.eta = eta;
  cfg.sample_mode = mode;
  cfg.optimizer.seed = seed;
  cfg.force_unit_weights = false;
  cfg.weights_in.reset();
  cfg.weights_out.reset();
  return cfg;
}

}  // namespace

std::uint64_t realization_seed(std::uint64_t seed, double p, std::uint64_t extra) {
  return derive_seed(seed, {static_cast<std::uint64_t>(std::llround(p * 1e6)), extra});
}

std::vector<ExperimentRow> run_noise_table(const std::string& image_id, const GrayImage& clean,
                                           const std::vector<double>& p_list,
                                           const std::vector<std::uint64_t>& seeds,
                                           const PipelineConfig& cfg,
                                           const HarnessOptions& opts) {
  std::vector<ExperimentRow> rows;
  auto timing = [&](Clock::time_point t0, double extra = 0.0) -> std::optional<double> {
    if (!opts.record_timing) return std::nullopt;
    return elapsed_ms(t0) + extra;
  };

  for (double p : p_list) {
    for (std::uint64_t seed : seeds) {
      const GrayImage noisy = inject_spn(clean, {p, realization_seed(seed, p)});

      auto t0 = Clock::now();
      const GrayImage med = median_filter(noisy, 3);
      rows.push_back({image_id, p, kMethodMedian, std::nullopt, seed, psnr(clean, med), timing(t0)});

      t0 = Clock::now();
      const ProcessedStack processed = process_stack(noisy, cfg);
      const double stack_ms = opts.record_timing ? elapsed_ms(t0) : 0.0;

      t0 = Clock::now();
      const GrayImage unit = recombine(processed.planes, unit_weights(processed.planes.depth()));
      rows.push_back({image_id, p, kMethodUnit, std::nullopt, seed, psnr(clean, unit),
                      timing(t0, stack_ms)});

      const std::uint64_t fs = fit_seed(seed, p);
      for (const auto& [eta, label] : {std::pair{1.0, kMethodFitFull}, std::pair{0.1, kMethodFitTenth}}) {
        t0 = Clock::now();
        const DenoiseResult r =
            finish_pipeline(processed, noisy, fitting_config(cfg, eta, RandomSampling{}, fs));
        rows.push_back({image_id, p, label, eta, seed, psnr(clean, r.image), timing(t0, stack_ms)});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return std::tie(a.p, a.method, a.seed) < std::tie(b.p, b.method, b.seed);
  });
  return rows;
}

void write_noise_table_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "image,p,method,eta,seed,psnr_db,wall_ms\n";
  for (const auto& r : rows) {
    out << r.image_id << ',' << fmt("%.4f", r.p) << ',' << r.method << ','
        << (r.eta ? fmt("%.4f", *r.eta) : "na") << ',' << r.seed << ',' << format_psnr(r.psnr_db)
        << ',' << fmt_ms(r.wall_ms) << '\n';
  }
}

std::vector<EtaSweepRow> run_eta_sweep(const std::string& image_id, const GrayImage& clean,
                                       const std::vector<int>& factors, double p,
                                       const std::vector<std::uint64_t>& seeds,
                                       const PipelineConfig& cfg, const HarnessOptions& opts) {
  for (int k : factors) {
    if (k < 1) throw std::invalid_argument("segmentation factors must be >= 1");
  }
  std::vector<EtaSweepRow> rows;
  for (int factor : factors) {
    for (std::uint64_t seed : seeds) {
      // Every sub-sampling runs on its own noise realization.
      const GrayImage noisy =
          inject_spn(clean, {p, realization_seed(seed, p, static_cast<std::uint64_t>(factor))});
      auto t0 = Clock::now();
      const ProcessedStack processed = process_stack(noisy, cfg);
      const double stack_ms = opts.record_timing ? elapsed_ms(t0) : 0.0;
      const std::uint64_t fs = fit_seed(seed, p);

      struct Variant {
        const char* method;
        double eta;
        SampleMode mode;
      };
      const Variant variants[] = {
          {"grid", grid_eta(factor), GridSampling{factor}},
          {"reference", 1.0, RandomSampling{}},
      };
      for (const Variant& v : variants) {
        t0 = Clock::now();
        const DenoiseResult r = finish_pipeline(processed, noisy, fitting_config(cfg, v.eta, v.mode, fs));
        std::optional<double> ms;
        if (opts.record_timing) ms = elapsed_ms(t0) + stack_ms;
        rows.push_back({image_id, p, factor, v.method, v.eta, seed,
                        r.fit ? r.fit->sampled_pixel_count : 0, psnr(clean, r.image), ms});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const EtaSweepRow& a, const EtaSweepRow& b) {
    return std::tie(a.p, a.factor, a.method, a.seed) < std::tie(b.p, b.factor, b.method, b.seed);
  });
  return rows;
}

void write_eta_sweep_csv(std::ostream& out, const std::vector<EtaSweepRow>& rows) {
  out << "image,p,factor,method,eta,seed,samples,psnr_db,wall_ms\n";
  for (const auto& r : rows) {
    out << r.image_id << ',' << fmt("%.4f", r.p) << ',' << r.factor << ',' << r.method << ','
        << fmt("%.6f", r.eta) << ',' << r.seed << ',' << r.samples << ','
        << format_psnr(r.psnr_db) << ',' << fmt_ms(r.wall_ms) << '\n';
  }
}

std::vector<WeightStatsRow> run_weight_stability(const std::string& image_id,
                                                 const GrayImage& clean,
                                                 const std::vector<double>& p_list,
                                                 const std::vector<std::uint64_t>& seeds,
                                                 const PipelineConfig& cfg) {
  std::vector<WeightStatsRow> rows;
  for (double p : p_list) {
    for (std::uint64_t seed : seeds) {
      const GrayImage noisy = inject_spn(clean, {p, realization_seed(seed, p)});
      const PipelineConfig fc = fitting_config(cfg, cfg.eta, cfg.sample_mode, fit_seed(seed, p));
      const DenoiseResult r = denoise_pipeline(noisy, fc);
      rows.push_back({image_id, p, seed, cfg.eta, cfg.optimizer.epochs, r.weights.size(),
                      weight_stats(r.weights)});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const WeightStatsRow& a, const WeightStatsRow& b) {
    return std::tie(a.p, a.seed) < std::tie(b.p, b.seed);
  });
  return rows;
}

void write_weight_stats_csv(std::ostream& out, const std::vector<WeightStatsRow>& rows) {
  out << "image,p,seed,eta,epochs,t,mean,median,std,min,max,sum\n";
  for (const auto& r : rows) {
    out << r.image_id << ',' << fmt("%.4f", r.p) << ',' << r.seed << ',' << fmt("%.4f", r.eta)
        << ',' << r.epochs << ',' << r.count << ',' << fmt("%.6f", r.stats.mean) << ','
        << fmt("%.6f", r.stats.median) << ',' << fmt("%.6f", r.stats.std) << ','
        << fmt("%.6f", r.stats.min) << ',' << fmt("%.6f", r.stats.max) << ','
        << fmt("%.6f", r.stats.sum) << '\n';
  }
}

}  // namespace cadenoise
