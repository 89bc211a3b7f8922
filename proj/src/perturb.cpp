#include "algodecon/perturb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "algodecon/error.hpp"

namespace algodecon::perturb {

namespace {

std::array<std::size_t, 2> edge_cells(const graphs::Edge& e, int n) {
  return {static_cast<std::size_t>(e.u) * n + e.v, static_cast<std::size_t>(e.v) * n + e.u};
}

void sort_signature(std::vector<EdgeContribution>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.bits != b.bits) return a.bits > b.bits;
    return a.edge < b.edge;
  });
}

}  // namespace

std::vector<double> InformationSignature::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.bits);
  return v;
}

double edge_contribution(const graphs::Graph& g, const graphs::Edge& e, const bdm::Evaluator& ev) {
  if (!g.has_edge(e.u, e.v)) throw DataError("edge is not in the graph");
  const bdm::BlockState state(ev, g.adjacency());
  const auto cells = edge_cells(e, g.node_count());
  return -state.flip_delta(cells);
}

InformationSignature signature(const graphs::Graph& g, const bdm::Evaluator& ev) {
  if (g.edge_count() == 0) throw DataError("signature needs at least one edge");
  const bdm::BlockState state(ev, g.adjacency());
  InformationSignature sig;
  sig.base_bits = state.bits();
  sig.entries.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto cells = edge_cells(e, g.node_count());
    sig.entries.push_back({e, -state.flip_delta(cells)});
  }
  sort_signature(sig.entries);
  return sig;
}

const char* class_name(CellClass c) {
  switch (c) {
    case CellClass::Negative: return "negative";
    case CellClass::Neutral: return "neutral";
    case CellClass::Positive: return "positive";
  }
  return "?";
}

CellClass classify(double contribution, double tau) {
  if (std::abs(contribution) <= tau) return CellClass::Neutral;
  return contribution > 0 ? CellClass::Positive : CellClass::Negative;
}

double default_tau(const std::vector<double>& contributions) {
  if (contributions.empty()) return 0.0;
  const double n = static_cast<double>(contributions.size());
  const double mean = std::accumulate(contributions.begin(), contributions.end(), 0.0) / n;
  double ss = 0.0;
  for (double c : contributions) ss += (c - mean) * (c - mean);
  return 0.5 * std::sqrt(ss / n);
}

void Footprint::reclassify(double new_tau) {
  tau = new_tau;
  classes.resize(contribution.size());
  for (std::size_t i = 0; i < contribution.size(); ++i) classes[i] = classify(contribution[i], tau);
}

Footprint grid_footprint(const Grid& grid, const bdm::Evaluator& ev, std::optional<double> tau) {
  const bdm::BlockState state(ev, grid);
  Footprint fp;
  fp.rows = grid.rows();
  fp.cols = grid.cols();
  fp.base_bits = state.bits();
  fp.contribution.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t cell[1] = {i};
    fp.contribution[i] = -state.flip_delta(cell);
  }
  fp.reclassify(tau.value_or(default_tau(fp.contribution)));
  return fp;
}

Footprint string_footprint(const BitString& s, const bdm::Evaluator& ev, EditMode mode, std::optional<double> tau) {
  if (s.empty()) throw DataError("footprint of an empty string");
  Footprint fp;
  fp.rows = 1;
  fp.cols = s.size();
  fp.contribution.resize(s.size());
  if (mode == EditMode::Flip) {
    const bdm::BlockState state(ev, s);
    fp.base_bits = state.bits();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t cell[1] = {i};
      fp.contribution[i] = -state.flip_delta(cell);
    }
  } else {
    if (s.size() < 2) throw UsageError("delete mode needs at least two symbols");
    fp.base_bits = ev.bdm(s).bits;
    BitString shorter(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i), shorter.begin());
      std::copy(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(), shorter.begin() + static_cast<std::ptrdiff_t>(i));
      fp.contribution[i] = fp.base_bits - ev.bdm(shorter).bits;
    }
  }
  fp.reclassify(tau.value_or(default_tau(fp.contribution)));
  return fp;
}

}  // namespace algodecon::perturb
