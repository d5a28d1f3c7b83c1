#include "cadenoise/ca.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cadenoise {

BinaryImage::BinaryImage(int width, int height, bool fill) : dims_{width, height} {
  if (width <= 0 || height <= 0) throw std::invalid_argument("binary image dimensions must be positive");
  cells_.assign(dims_.area(), fill ? 1 : 0);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> cells)
    : dims_{width, height}, cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("binary image dimensions must be positive");
  if (cells_.size() != dims_.area()) throw std::invalid_argument("binary image cell count mismatch");
  for (auto& c : cells_) c = c ? 1 : 0;
}

std::size_t BinaryImage::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::size_t NeighborhoodSpec::cell_count() const {
  if (radius < 1) throw std::invalid_argument("neighborhood radius must be >= 1");
  const auto r = static_cast<std::size_t>(radius);
  return kind == NeighborhoodKind::kMoore ? (2 * r + 1) * (2 * r + 1) : 2 * r * (r + 1) + 1;
}

std::vector<Offset> NeighborhoodSpec::offsets() const {
  if (radius < 1) throw std::invalid_argument("neighborhood radius must be >= 1");
  std::vector<Offset> out;
  out.reserve(cell_count());
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (kind == NeighborhoodKind::kVonNeumann && std::abs(dx) + std::abs(dy) > radius) continue;
      out.push_back({dx, dy});
    }
  }
  return out;
}

std::vector<Coord> neighborhood_cells(const NeighborhoodSpec& spec, Coord center, Dims dims) {
  if (!dims.contains(center.x, center.y)) {
    throw std::out_of_range("neighborhood center (" + std::to_string(center.x) + ", " +
                            std::to_string(center.y) + ") lies outside the grid");
  }
  std::vector<Coord> out;
  for (const Offset& o : spec.offsets()) {
    out.push_back({std::clamp(center.x + o.dx, 0, dims.width - 1),
                   std::clamp(center.y + o.dy, 0, dims.height - 1)});
  }
  return out;
}

bool majority_rule_eval(std::span<const std::uint8_t> config) {
  if (config.size() % 2 == 0) {
    throw std::invalid_argument("majority rule needs an odd configuration size, got " +
                                std::to_string(config.size()));
  }
  std::size_t ones = 0;
  for (auto c : config) ones += c ? 1 : 0;
  return 2 * ones > config.size();
}

std::string_view rule_name(RuleId id) {
  switch (id) {
    case RuleId::kIdentity: return "identity";
    case RuleId::kMajority: return "majority";
  }
  return "unknown";
}

RuleId parse_rule(std::string_view name) {
  if (name == "identity") return RuleId::kIdentity;
  if (name == "majority") return RuleId::kMajority;
  throw std::invalid_argument("unknown CA rule '" + std::string(name) + "'");
}

bool CaRule::operator()(std::span<const std::uint8_t> config) const {
  switch (id_) {
    case RuleId::kIdentity: return config[config.size() / 2] != 0;
    case RuleId::kMajority: return majority_rule_eval(config);
  }
  throw std::logic_error("unhandled CA rule");
}

namespace {

// Per-offset table of clamped column indices, so the inner loops are free of
// boundary branches.
std::vector<std::vector<int>> clamped_columns(const std::vector<Offset>& offs, int width) {
  std::vector<std::vector<int>> cols(offs.size(), std::vector<int>(width));
  for (std::size_t o = 0; o < offs.size(); ++o) {
    for (int x = 0; x < width; ++x) cols[o][x] = std::clamp(x + offs[o].dx, 0, width - 1);
  }
  return cols;
}

BinaryImage majority_step(const BinaryImage& img, const std::vector<Offset>& offs) {
  const int w = img.width();
  const int h = img.height();
  const auto cols = clamped_columns(offs, w);
  const auto in = img.cells();
  std::vector<std::uint8_t> out(in.size());
  std::vector<std::uint16_t> count(w);
  const std::size_t n = offs.size();

  for (int y = 0; y < h; ++y) {
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t o = 0; o < n; ++o) {
      const int ry = std::clamp(y + offs[o].dy, 0, h - 1);
      const std::uint8_t* row = in.data() + static_cast<std::size_t>(ry) * w;
      const int* cx = cols[o].data();
      for (int x = 0; x < w; ++x) count[x] += row[cx[x]];
    }
    std::uint8_t* dst = out.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) dst[x] = 2u * count[x] > n ? 1 : 0;
  }
  return BinaryImage(w, h, std::move(out));
}

BinaryImage generic_step(const BinaryImage& img, const CaRule& rule,
                         const std::vector<Offset>& offs) {
  const int w = img.width();
  const int h = img.height();
  const auto cols = clamped_columns(offs, w);
  const auto in = img.cells();
  std::vector<std::uint8_t> out(in.size());
  std::vector<std::uint8_t> config(offs.size());

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (std::size_t o = 0; o < offs.size(); ++o) {
        const int ry = std::clamp(y + offs[o].dy, 0, h - 1);
        config[o] = in[static_cast<std::size_t>(ry) * w + cols[o][x]];
      }
      out[static_cast<std::size_t>(y) * w + x] = rule(config) ? 1 : 0;
    }
  }
  return BinaryImage(w, h, std::move(out));
}

}  // namespace

BinaryImage apply_rule_step(const BinaryImage& img, const CaRule& rule,
                            const NeighborhoodSpec& spec) {
  const auto offs = spec.offsets();
  switch (rule.id()) {
    case RuleId::kIdentity: return img;
    case RuleId::kMajority:
      if (offs.size() % 2 == 0) throw std::invalid_argument("majority rule needs an odd neighborhood");
      return majority_step(img, offs);
  }
  return generic_step(img, rule, offs);
}

BinaryImage evolve(const BinaryImage& img, const CaRule& rule, const NeighborhoodSpec& spec,
                   int steps) {
  if (steps < 0) throw std::invalid_argument("CA step count must be >= 0");
  BinaryImage cur = img;
  for (int s = 0; s < steps; ++s) {
    if (rule.id() == RuleId::kIdentity) break;
    cur = apply_rule_step(cur, rule, spec);
  }
  return cur;
}

}  // namespace cadenoise
