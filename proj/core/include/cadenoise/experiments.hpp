#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cadenoise/image.hpp"
#include "cadenoise/pipeline.hpp"
#include "cadenoise/weight_stats.hpp"

namespace cadenoise {

// CSV conventions shared by every harness: a header row, comma separated,
// '.' decimal point, PSNR with four decimals or "inf". Rows are sorted before
// emission so output never depends on evaluation order. Wall-clock columns
// are only filled when timing is requested ("na" otherwise) so that runs with
// equal seeds are byte-identical.

inline constexpr const char* kMethodMedian = "median3x3";
inline constexpr const char* kMethodUnit = "unit_weights";
inline constexpr const char* kMethodFitFull = "fit_eta_1.0";
inline constexpr const char* kMethodFitTenth = "fit_eta_0.1";

struct ExperimentRow {
  std::string image_id;
  double p = 0.0;
  std::string method;
  std::optional<double> eta;  // empty for methods without regression
  std::uint64_t seed = 0;
  double psnr_db = 0.0;
  std::optional<double> wall_ms;
};

struct HarnessOptions {
  bool record_timing = false;
};

/// For each (p, seed): one shared noise realization, then median 3x3, unit
/// weights, fit at eta = 1.0 and fit at eta = 0.1.
std::vector<ExperimentRow> run_noise_table(const std::string& image_id, const GrayImage& clean,
                                           const std::vector<double>& p_list,
                                           const std::vector<std::uint64_t>& seeds,
                                           const PipelineConfig& cfg,
                                           const HarnessOptions& opts = {});
void write_noise_table_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct EtaSweepRow {
  std::string image_id;
  double p = 0.0;
  int factor = 1;
  std::string method;  // "grid" or "reference"
  double eta = 1.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double psnr_db = 0.0;
  std::optional<double> wall_ms;
};

/// For each (factor, seed): a separate noise realization, a fit on the grid
/// subsample at that factor and a reference fit on every uncorrupted pixel.
std::vector<EtaSweepRow> run_eta_sweep(const std::string& image_id, const GrayImage& clean,
                                       const std::vector<int>& factors, double p,
                                       const std::vector<std::uint64_t>& seeds,
                                       const PipelineConfig& cfg,
                                       const HarnessOptions& opts = {});
void write_eta_sweep_csv(std::ostream& out, const std::vector<EtaSweepRow>& rows);

struct WeightStatsRow {
  std::string image_id;
  double p = 0.0;
  std::uint64_t seed = 0;
  double eta = 1.0;
  int epochs = 0;
  std::size_t count = 0;
  WeightStats stats;
};

/// Independent fit per (p, seed), summarized with weight_stats().
std::vector<WeightStatsRow> run_weight_stability(const std::string& image_id,
                                                 const GrayImage& clean,
                                                 const std::vector<double>& p_list,
                                                 const std::vector<std::uint64_t>& seeds,
                                                 const PipelineConfig& cfg);
void write_weight_stats_csv(std::ostream& out, const std::vector<WeightStatsRow>& rows);

/// Noise seed used by the harnesses for a (p, seed) cell.
std::uint64_t realization_seed(std::uint64_t seed, double p, std::uint64_t extra = 0);

}  // namespace cadenoise
