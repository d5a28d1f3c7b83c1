#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cadenoise/image.hpp"

namespace cadenoise {

/// Two-state lattice, one byte per cell (0 or 1), row-major.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height, bool fill = false);
  BinaryImage(int width, int height, std::vector<std::uint8_t> cells);

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool at(int x, int y) const { return cells_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { cells_[index(x, y)] = v ? 1 : 0; }
  bool operator[](std::size_t i) const { return cells_[i] != 0; }

  std::span<const std::uint8_t> cells() const noexcept { return cells_; }
  std::span<std::uint8_t> cells() noexcept { return cells_; }

  std::size_t count_ones() const noexcept;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  Dims dims_;
  std::vector<std::uint8_t> cells_;
};

enum class NeighborhoodKind { kMoore, kVonNeumann };
enum class Boundary { kReplicate };

struct Offset {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

struct Coord {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Ball of radius r around a cell: Chebyshev distance for Moore, Manhattan
/// distance for von Neumann. The center belongs to the ball.
struct NeighborhoodSpec {
  NeighborhoodKind kind = NeighborhoodKind::kMoore;
  int radius = 1;
  Boundary boundary = Boundary::kReplicate;

  /// (2r+1)^2 for Moore, 2r(r+1)+1 for von Neumann.
  std::size_t cell_count() const;
  /// Offsets in row-major order (dy outer, dx inner); the center sits at
  /// index cell_count() / 2.
  std::vector<Offset> offsets() const;
};

/// Neighbors of `center` in row-major order, out-of-range coordinates clamped
/// onto the grid. Throws std::out_of_range if center lies outside `dims`.
std::vector<Coord> neighborhood_cells(const NeighborhoodSpec& spec, Coord center, Dims dims);

/// Strict majority: 1 iff ones outnumber zeros. Even-length input is rejected
/// with std::invalid_argument since a tie has no defined outcome.
bool majority_rule_eval(std::span<const std::uint8_t> config);

enum class RuleId { kIdentity, kMajority };

std::string_view rule_name(RuleId id);
RuleId parse_rule(std::string_view name);

/// Transition function of the automaton. It sees the neighborhood
/// configuration in NeighborhoodSpec::offsets() order and returns the next
/// state of the center cell. Rules are stateless, so they are position- and
/// time-invariant.
class CaRule {
 public:
  explicit CaRule(RuleId id = RuleId::kMajority) : id_(id) {}

  RuleId id() const noexcept { return id_; }
  bool operator()(std::span<const std::uint8_t> config) const;

 private:
  RuleId id_;
};

/// One synchronous update: every output cell is computed from the input
/// lattice only.
BinaryImage apply_rule_step(const BinaryImage& img, const CaRule& rule,
                            const NeighborhoodSpec& spec);

/// `steps` successive synchronous updates; steps == 0 copies the input.
BinaryImage evolve(const BinaryImage& img, const CaRule& rule, const NeighborhoodSpec& spec,
                   int steps);

}  // namespace cadenoise
