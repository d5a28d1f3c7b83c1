#include "cadenoise/weights_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cadenoise/error.hpp"

namespace cadenoise {

namespace {

constexpr std::string_view kMagic = "cadenoise-weights";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw WeightFileError("weight file: cannot parse " + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void save_weights(const WeightFile& file, const std::filesystem::path& path) {
  if (file.weights.size() != file.thresholds.size()) {
    throw std::invalid_argument("save_weights: weight count differs from threshold count");
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw WeightFileError(path.string() + ": cannot open for writing");

  out << kMagic << ' ' << kWeightFormatVersion << ' ' << file.thresholds.size();
  for (int k : file.thresholds.values()) out << ' ' << k;
  out << '\n';
  for (double w : file.weights.weights) out << format_double(w) << '\n';
  out << "nonneg=" << (file.weights.nonneg_constrained ? 1 : 0) << '\n';
  const WeightProvenance& p = file.provenance;
  if (p.noise_p) out << "noise_p=" << format_double(*p.noise_p) << '\n';
  if (p.seed) out << "seed=" << *p.seed << '\n';
  if (p.epochs) out << "epochs=" << *p.epochs << '\n';
  if (p.eta) out << "eta=" << format_double(*p.eta) << '\n';
  out.flush();
  if (!out) throw WeightFileError(path.string() + ": write failed");
}

WeightFile load_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw WeightFileError(path.string() + ": cannot open weight file");

  std::string line;
  if (!std::getline(in, line)) throw WeightFileError(path.string() + ": empty weight file");
  std::istringstream header(line);
  std::string magic;
  int version = 0;
  std::size_t count = 0;
  if (!(header >> magic) || magic != kMagic) {
    throw WeightFileError(path.string() + ": not a cadenoise weight file");
  }
  if (!(header >> version)) throw WeightFileError(path.string() + ": missing format version");
  if (version != kWeightFormatVersion) {
    throw WeightFileError(path.string() + ": unsupported weight format version " +
                          std::to_string(version) + " (expected " +
                          std::to_string(kWeightFormatVersion) + ")");
  }
  if (!(header >> count) || count == 0) {
    throw WeightFileError(path.string() + ": missing threshold count");
  }
  std::vector<int> ks(count);
  for (auto& k : ks) {
    if (!(header >> k)) throw WeightFileError(path.string() + ": truncated threshold list");
  }

  WeightFile file;
  try {
    file.thresholds = ThresholdSet(std::move(ks));
  } catch (const std::invalid_argument& e) {
    throw WeightFileError(path.string() + ": " + e.what());
  }

  file.weights.weights.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw WeightFileError(path.string() + ": truncated weight list");
    file.weights.weights.push_back(parse_number<double>(line, "weight"));
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw WeightFileError(path.string() + ": malformed metadata line '" + line + "'");
    }
    const std::string_view key(line.data(), eq);
    const std::string_view value(line.data() + eq + 1, line.size() - eq - 1);
    if (key == "nonneg") {
      file.weights.nonneg_constrained = parse_number<int>(value, "nonneg") != 0;
    } else if (key == "noise_p") {
      file.provenance.noise_p = parse_number<double>(value, "noise_p");
    } else if (key == "seed") {
      file.provenance.seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "epochs") {
      file.provenance.epochs = parse_number<int>(value, "epochs");
    } else if (key == "eta") {
      file.provenance.eta = parse_number<double>(value, "eta");
    }
    // Unknown keys are ignored so later versions can add provenance fields.
  }
  return file;
}

}  // namespace cadenoise
