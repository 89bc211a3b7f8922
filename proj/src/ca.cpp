#include "algodecon/ca.hpp"

#include <algorithm>
#include <random>

#include "algodecon/error.hpp"

namespace algodecon::ca {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int mixed_slot(const Neighbourhood& n) {
  const auto& all = mixed_neighbourhoods();
  for (int i = 0; i < 12; ++i)
    if (all[i] == n) return i;
  return -1;
}

}  // namespace

EcaRule::EcaRule(int number) : number_(number) {
  if (number < 0 || number > 255) throw UsageError("ECA rule must be in [0, 255]");
}

Row eca_step(const EcaRule& rule, const Row& row) {
  const std::size_t w = row.size();
  if (w < 3) throw UsageError("CA width must be at least 3");
  Row next(w);
  for (std::size_t i = 0; i < w; ++i) next[i] = rule(row[(i + w - 1) % w], row[i], row[(i + 1) % w]);
  return next;
}

Grid eca_evolve(const EcaRule& rule, const Row& init, int steps) {
  if (steps < 1) throw UsageError("steps must be at least 1");
  if (init.size() < 3) throw UsageError("CA width must be at least 3");
  for (auto v : init)
    if (v > 1) throw DataError("ECA row is not binary");
  Grid g(static_cast<std::size_t>(steps) + 1, init.size());
  Row row = init;
  for (int t = 0;; ++t) {
    std::copy(row.begin(), row.end(), g.cells().begin() + static_cast<std::ptrdiff_t>(t * init.size()));
    if (t == steps) break;
    row = eca_step(rule, row);
  }
  return g;
}

const std::array<Neighbourhood, 12>& mixed_neighbourhoods() {
  static const std::array<Neighbourhood, 12> table{{{-1, 1, 0},
                                                    {-1, 0, 1},
                                                    {-1, 1, 1},
                                                    {1, -1, 1},
                                                    {1, -1, 0},
                                                    {1, 1, -1},
                                                    {1, 0, -1},
                                                    {0, 1, -1},
                                                    {0, -1, 1},
                                                    {1, -1, -1},
                                                    {-1, 1, -1},
                                                    {-1, -1, 1}}};
  return table;
}

InteractionRule::InteractionRule(int index) : index_(index) {
  if (index < 1 || index > kInteractionRules) throw UsageError("interaction rule must be in [1, 531441]");
  // Base-3 digits of index-1, most significant first; digit 0 stands for -1.
  int x = index - 1;
  for (int i = 11; i >= 0; --i) {
    out_[i] = static_cast<std::int8_t>(x % 3 - 1);
    x /= 3;
  }
}

std::int8_t InteractionRule::operator()(const Neighbourhood& n) const {
  const int slot = mixed_slot(n);
  if (slot < 0) throw UsageError("neighbourhood is not mixed");
  return out_[slot];
}

ZeroOwner parse_zero_owner(const std::string& s) {
  if (s == "auto") return ZeroOwner::Auto;
  if (s == "A") return ZeroOwner::A;
  if (s == "B") return ZeroOwner::B;
  if (s == "white") return ZeroOwner::White;
  throw UsageError("zero owner must be auto, A, B or white");
}

Grid StateGrid::projection() const {
  Grid g(rows_, cols_);
  for (std::size_t i = 0; i < cells_.size(); ++i) g.cells()[i] = cells_[i] != 0;
  return g;
}

Grid StateGrid::mask(std::int8_t state) const {
  Grid g(rows_, cols_);
  for (std::size_t i = 0; i < cells_.size(); ++i) g.cells()[i] = cells_[i] == state;
  return g;
}

std::vector<std::string> StateGrid::to_rows() const {
  std::vector<std::string> out(rows_, std::string(cols_, '.'));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto v = (*this)(r, c);
      out[r][c] = v < 0 ? 'A' : v > 0 ? 'B' : '.';
    }
  return out;
}

StateGrid StateGrid::from_rows(const std::vector<std::string>& lines) {
  if (lines.empty() || lines.front().empty()) throw DataError("empty state grid");
  StateGrid g(lines.size(), lines.front().size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != g.cols_) throw DataError("ragged state grid");
    for (std::size_t c = 0; c < g.cols_; ++c) {
      switch (lines[r][c]) {
        case 'A': g(r, c) = -1; break;
        case '.': g(r, c) = 0; break;
        case 'B': g(r, c) = 1; break;
        default: throw DataError("state grid cells must be A, . or B");
      }
    }
  }
  return g;
}

std::int8_t random_state(std::uint64_t seed, std::uint64_t t, std::uint64_t i) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ t) ^ i);
  return static_cast<std::int8_t>(static_cast<int>(h % 3) - 1);
}

StateRow interacting_step(const Interaction& rules, const StateRow& row, std::uint64_t t) {
  const std::size_t w = row.size();
  if (w < 3) throw UsageError("CA width must be at least 3");
  ZeroOwner owner = rules.zero_owner;
  if (owner == ZeroOwner::Auto) {
    if (rules.rule_a(0, 0, 0) || rules.rule_b(0, 0, 0))
      throw UsageError("a rule maps 000 to 1; choose a zero owner (A, B or white)");
    owner = ZeroOwner::White;
  }
  StateRow next(w);
  for (std::size_t i = 0; i < w; ++i) {
    const Neighbourhood n{row[(i + w - 1) % w], row[i], row[(i + 1) % w]};
    bool has_a = false, has_b = false;
    for (auto v : n) {
      if (v < -1 || v > 1) throw DataError("state outside {-1, 0, 1}");
      has_a |= v < 0;
      has_b |= v > 0;
    }
    if (has_a && has_b) {
      next[i] = rules.table ? (*rules.table)(n) : random_state(rules.random_seed, t, i);
    } else if (has_a) {
      next[i] = rules.rule_a(n[0] != 0, n[1] != 0, n[2] != 0) ? -1 : 0;
    } else if (has_b) {
      next[i] = rules.rule_b(n[0], n[1], n[2]) ? 1 : 0;
    } else {
      switch (owner) {
        case ZeroOwner::A: next[i] = rules.rule_a(0, 0, 0) ? -1 : 0; break;
        case ZeroOwner::B: next[i] = rules.rule_b(0, 0, 0) ? 1 : 0; break;
        default: next[i] = 0;
      }
    }
  }
  return next;
}

StateGrid interacting_evolve(const Interaction& rules, const StateRow& init, int steps) {
  if (steps < 1) throw UsageError("steps must be at least 1");
  StateGrid g(static_cast<std::size_t>(steps) + 1, init.size());
  StateRow row = init;
  for (int t = 0;; ++t) {
    for (std::size_t c = 0; c < row.size(); ++c) g(t, c) = row[c];
    if (t == steps) break;
    row = interacting_step(rules, row, static_cast<std::uint64_t>(t));
  }
  return g;
}

StateRow split_random_init(std::size_t width, std::uint64_t seed) {
  if (width < 3) throw UsageError("CA width must be at least 3");
  std::mt19937_64 rng(seed);
  StateRow row(width);
  for (std::size_t i = 0; i < width; ++i) {
    const bool on = (rng() & 1U) != 0;
    row[i] = on ? (i < width / 2 ? -1 : 1) : 0;
  }
  return row;
}

Row random_row(std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Row row(width);
  for (auto& v : row) v = static_cast<std::uint8_t>(rng() & 1U);
  return row;
}

Row single_cell_row(std::size_t width) {
  Row row(width, 0);
  if (width) row[width / 2] = 1;
  return row;
}

}  // namespace algodecon::ca
