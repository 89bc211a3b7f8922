#pragma once

// Elementary cellular automata and the 3-state interacting model: two ECAs
// share one cyclic row, automaton A drawing with -1 ("grey"), automaton B
// with +1 ("black"), and mixed neighbourhoods resolved by an interaction rule.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algodecon/grid.hpp"

namespace algodecon::ca {

using Row = std::vector<std::uint8_t>;

class EcaRule {
 public:
  explicit EcaRule(int number);
  int number() const { return number_; }
  /// Output for neighbourhood (l, c, r); bit l*4 + c*2 + r of the rule number.
  std::uint8_t operator()(int l, int c, int r) const {
    return static_cast<std::uint8_t>((number_ >> (l * 4 + c * 2 + r)) & 1);
  }

 private:
  int number_;
};

Row eca_step(const EcaRule& rule, const Row& row);
/// steps+1 rows, row 0 = init, cyclic boundary.
Grid eca_evolve(const EcaRule& rule, const Row& init, int steps);

inline constexpr int kInteractionRules = 531441;  // 3^12

using Neighbourhood = std::array<std::int8_t, 3>;

/// The 12 neighbourhoods containing both -1 and +1, in table order.
const std::array<Neighbourhood, 12>& mixed_neighbourhoods();

class InteractionRule {
 public:
  /// The index-th (1-based) tuple of {-1,0,1}^12 in lexicographic order.
  explicit InteractionRule(int index);
  int index() const { return index_; }
  const std::array<std::int8_t, 12>& outputs() const { return out_; }
  std::int8_t operator()(const Neighbourhood& n) const;

 private:
  int index_;
  std::array<std::int8_t, 12> out_{};
};

/// Who decides the all-white neighbourhood (0,0,0).
enum class ZeroOwner { Auto, A, B, White };
ZeroOwner parse_zero_owner(const std::string& s);

/// A 3-state row or space-time grid, values in {-1, 0, +1}.
class StateGrid {
 public:
  StateGrid() = default;
  StateGrid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int8_t operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::int8_t& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  const std::vector<std::int8_t>& cells() const { return cells_; }

  /// 1 where the state is non-white.
  Grid projection() const;
  /// 1 where the state equals `state`.
  Grid mask(std::int8_t state) const;

  /// Lines over {A, ., B} for -1, 0, +1.
  std::vector<std::string> to_rows() const;
  static StateGrid from_rows(const std::vector<std::string>& lines);

  friend bool operator==(const StateGrid&, const StateGrid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int8_t> cells_;
};

using StateRow = std::vector<std::int8_t>;

struct Interaction {
  EcaRule rule_a{60};
  EcaRule rule_b{110};
  /// Deterministic table, or i.i.d. uniform draws keyed by (seed, t, i).
  std::optional<InteractionRule> table = InteractionRule(kInteractionRules);
  std::uint64_t random_seed = 0;
  ZeroOwner zero_owner = ZeroOwner::Auto;
};

/// Uniform value in {-1, 0, 1} for (seed, t, i); stateless.
std::int8_t random_state(std::uint64_t seed, std::uint64_t t, std::uint64_t i);

StateRow interacting_step(const Interaction& rules, const StateRow& row, std::uint64_t t = 0);
StateGrid interacting_evolve(const Interaction& rules, const StateRow& init, int steps);

/// Left half uniform over {0, -1}, right half uniform over {0, +1}.
StateRow split_random_init(std::size_t width, std::uint64_t seed);
Row random_row(std::size_t width, std::uint64_t seed);
Row single_cell_row(std::size_t width);

}  // namespace algodecon::ca
