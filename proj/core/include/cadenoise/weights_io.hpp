#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "cadenoise/recombine.hpp"
#include "cadenoise/thresholds.hpp"

namespace cadenoise {

// Text format, version 1:
//
//   cadenoise-weights 1 <t> <k_1> ... <k_t>
//   <w_1>              (t lines, "%.17g")
//   ...
//   nonneg=<0|1>
//   noise_p=<p>        (optional provenance lines, key=value)
//   seed=<seed>
//   epochs=<n>
//   eta=<eta>
inline constexpr int kWeightFormatVersion = 1;

struct WeightProvenance {
  std::optional<double> noise_p;
  std::optional<std::uint64_t> seed;
  std::optional<int> epochs;
  std::optional<double> eta;

  friend bool operator==(const WeightProvenance&, const WeightProvenance&) = default;
};

struct WeightFile {
  ThresholdSet thresholds;
  WeightVector weights;
  WeightProvenance provenance;
};

void save_weights(const WeightFile& file, const std::filesystem::path& path);
/// Throws WeightFileError on I/O failure, a version mismatch or a malformed body.
WeightFile load_weights(const std::filesystem::path& path);

}  // namespace cadenoise
