#include "algodecon/deconvolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>

#include "algodecon/error.hpp"

namespace algodecon::deconvolve {

namespace {

// All entries tied with entries[first].
std::vector<perturb::EdgeContribution> tied_group(const std::vector<perturb::EdgeContribution>& entries,
                                                  std::size_t first) {
  std::vector<perturb::EdgeContribution> out;
  const double v = entries[first].bits;
  for (const auto& e : entries)
    if (std::abs(e.bits - v) <= kTieTolerance) out.push_back(e);
  return out;
}

Wave select(const perturb::InformationSignature& sig, Policy policy) {
  const auto& entries = sig.entries;  // descending
  Wave wave;
  if (policy == Policy::Literal) {
    // Smallest strictly positive contribution.
    std::size_t pick = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i].bits > kTieTolerance) pick = i;
    if (pick < entries.size()) {
      wave.selection = Policy::Literal;
      wave.removed = tied_group(entries, pick);
      return wave;
    }
  }
  wave.selection = policy == Policy::AlgebraicMin ? Policy::AlgebraicMin : Policy::MaxGain;
  wave.removed = tied_group(entries, entries.size() - 1);
  return wave;
}

std::vector<double> drop_largest(std::vector<double> diffs) {
  // Exclude the top 5% (at least one) so candidate breaks do not inflate the median.
  std::sort(diffs.begin(), diffs.end());
  const auto drop = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(diffs.size())));
  diffs.resize(diffs.size() - std::min(drop, diffs.size() - 1));
  return diffs;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double epsilon_of(std::vector<double> diffs, double log_unit) {
  diffs = drop_largest(std::move(diffs));
  for (double& d : diffs) d = std::abs(d - log_unit);
  return median(std::move(diffs));
}

void check_log_unit(double log_unit) {
  if (!(log_unit > 0.0) || !std::isfinite(log_unit)) throw UsageError("log unit must be positive");
}

// 4-connected regions of the cells for which keep(cell) holds and which
// share label(cell); largest first, ties by smallest cell.
template <class Keep, class Label>
std::vector<std::vector<std::size_t>> regions(std::size_t rows, std::size_t cols, Keep keep, Label label) {
  std::vector<char> seen(rows * cols, 0);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < rows * cols; ++start) {
    if (seen[start] || !keep(start)) continue;
    std::vector<std::size_t> region;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      region.push_back(c);
      const std::size_t r = c / cols, q = c % cols;
      auto visit = [&](std::size_t nb) {
        if (!seen[nb] && keep(nb) && label(nb) == label(c)) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      };
      if (r > 0) visit(c - cols);
      if (r + 1 < rows) visit(c + cols);
      if (q > 0) visit(c - 1);
      if (q + 1 < cols) visit(c + 1);
    }
    std::sort(region.begin(), region.end());
    out.push_back(std::move(region));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

}  // namespace

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Literal: return "literal";
    case Policy::AlgebraicMin: return "algebraic-min";
    case Policy::MaxGain: return "max-gain";
  }
  return "?";
}

Policy parse_policy(const std::string& name) {
  if (name == "literal") return Policy::Literal;
  if (name == "algebraic-min") return Policy::AlgebraicMin;
  if (name == "max-gain") return Policy::MaxGain;
  throw UsageError("unknown policy '" + name + "'");
}

std::vector<graphs::Edge> GraphDeconvolution::removed_edges() const {
  std::vector<graphs::Edge> out;
  out.reserve(removed.size());
  for (const auto& r : removed) out.push_back(r.edge);
  return out;
}

GraphDeconvolution deconvolve_n(const graphs::Graph& g, int n, const bdm::Evaluator& ev, Policy policy) {
  if (n < 1) throw UsageError("component count must be at least 1");
  if (n > g.node_count()) throw UsageError("component count exceeds the number of nodes");
  GraphDeconvolution out;
  out.policy = policy;
  graphs::Graph work = g;
  while (work.component_count() < n && work.edge_count() > 0) {
    const auto sig = perturb::signature(work, ev);
    out.evaluations += sig.entries.size();
    ++out.iterations;
    Wave wave = select(sig, policy);
    for (const auto& e : wave.removed) {
      work.remove_edge(e.edge.u, e.edge.v);
      out.removed.push_back(e);
    }
    out.waves.push_back(std::move(wave));
  }
  out.components = work.components();
  out.result = std::move(work);
  return out;
}

std::vector<std::size_t> signature_breaks(const std::vector<double>& sorted_desc, double epsilon, double log_unit) {
  check_log_unit(log_unit);
  if (epsilon < 0.0) throw UsageError("epsilon must be nonnegative");
  std::vector<std::size_t> breaks;
  for (std::size_t i = 0; i + 1 < sorted_desc.size(); ++i)
    if (sorted_desc[i] - sorted_desc[i + 1] - log_unit > epsilon) breaks.push_back(i);
  return breaks;
}

double estimate_epsilon(const std::vector<double>& sorted_desc, double log_unit) {
  check_log_unit(log_unit);
  if (sorted_desc.size() < 3) throw DataError("epsilon estimation needs at least 3 signature entries");
  std::vector<double> diffs;
  diffs.reserve(sorted_desc.size() - 1);
  for (std::size_t i = 0; i + 1 < sorted_desc.size(); ++i) diffs.push_back(sorted_desc[i] - sorted_desc[i + 1]);
  return epsilon_of(std::move(diffs), log_unit);
}

double estimate_epsilon(const perturb::InformationSignature& sig, double log_unit) {
  return estimate_epsilon(sig.values(), log_unit);
}

GraphDeconvolution deconvolve_auto(const graphs::Graph& g, const EpsilonPolicy& policy, const bdm::Evaluator& ev) {
  if (policy.epsilon < 0.0) throw UsageError("epsilon must be nonnegative");
  check_log_unit(policy.log_unit);
  GraphDeconvolution out;
  out.result = g;
  if (g.edge_count() == 0) {
    out.components = g.components();
    return out;
  }
  auto sig = perturb::signature(g, ev);
  out.evaluations = sig.entries.size();
  out.iterations = 1;
  const auto values = sig.values();
  out.epsilon = policy.estimation == EpsilonPolicy::Estimation::SignatureDerived && values.size() >= 3
                    ? estimate_epsilon(values, policy.log_unit)
                    : policy.epsilon;
  out.breaks = signature_breaks(values, out.epsilon, policy.log_unit);
  std::optional<std::size_t> lowest;
  for (auto b : out.breaks)
    if (values[b + 1] > 0.0) lowest = b;
  if (lowest) {
    // Every entry standing above the lowest cuttable break goes in one wave.
    Wave wave;
    wave.selection = Policy::Literal;
    for (std::size_t i = 0; i <= *lowest; ++i) {
      out.result.remove_edge(sig.entries[i].edge.u, sig.entries[i].edge.v);
      wave.removed.push_back(sig.entries[i]);
      out.removed.push_back(sig.entries[i]);
    }
    out.waves.push_back(std::move(wave));
  }
  out.components = out.result.components();
  out.signature = std::move(sig);
  return out;
}

GridSegmentation segment_footprint(perturb::Footprint footprint) {
  GridSegmentation out;
  out.footprint = std::move(footprint);
  const auto& cls = out.footprint.classes;
  const std::size_t rows = out.footprint.rows, cols = out.footprint.cols;
  if (cls.size() != rows * cols || cls.empty()) throw DataError("footprint is empty or inconsistent");
  out.class_regions = regions(rows, cols, [](std::size_t) { return true; }, [&](std::size_t c) { return cls[c]; });
  for (const auto& r : out.class_regions) out.region_class.push_back(cls[r.front()]);
  for (std::size_t i = 0; i < out.class_regions.size(); ++i)
    if (out.region_class[i] == perturb::CellClass::Negative) {
      out.separator = out.class_regions[i];
      break;
    }
  std::vector<char> cut(rows * cols, 0);
  for (std::size_t c : out.separator) cut[c] = 1;
  out.components = regions(rows, cols, [&](std::size_t c) { return !cut[c]; }, [](std::size_t) { return 0; });
  return out;
}

GridSegmentation segment_grid(const Grid& grid, const bdm::Evaluator& ev, std::optional<double> tau) {
  return segment_footprint(perturb::grid_footprint(grid, ev, tau));
}

double region_bits_per_cell(const Grid& grid, const std::vector<std::size_t>& region, const bdm::Evaluator& ev) {
  if (ev.dim() != ctm::Dim::Two) throw TableError("grids need a 2D CTM table");
  std::vector<char> in(grid.size(), 0);
  for (std::size_t c : region) {
    if (c >= grid.size()) throw UsageError("region cell out of range");
    in[c] = 1;
  }
  const auto d = static_cast<std::size_t>(ev.block_size());
  std::map<std::uint64_t, std::size_t> counts;
  std::size_t area = 0;
  for (std::size_t r = 0; r < grid.rows(); r += d)
    for (std::size_t c = 0; c < grid.cols(); c += d) {
      const std::size_t br = std::min(d, grid.rows() - r), bc = std::min(d, grid.cols() - c);
      std::size_t inside = 0;
      std::uint32_t code = 0;
      for (std::size_t i = 0; i < br; ++i)
        for (std::size_t j = 0; j < bc; ++j) {
          inside += in[(r + i) * grid.cols() + c + j];
          code = (code << 1) | (grid(r + i, c + j) & 1U);
        }
      if (2 * inside <= br * bc) continue;
      const auto shape = static_cast<std::uint64_t>(ev.shape_id(static_cast<int>(br), static_cast<int>(bc)));
      ++counts[(shape << 32) | code];
      area += br * bc;
    }
  if (area == 0) return std::numeric_limits<double>::quiet_NaN();
  double bits = 0.0;
  for (const auto& [key, n] : counts)
    bits += ev.block_bits(static_cast<int>(key >> 32), static_cast<std::uint32_t>(key & 0xffffffffULL)) +
            std::log2(static_cast<double>(n));
  return bits / static_cast<double>(area);
}

StringSegmentation deconvolve_string(const BitString& s, const bdm::Evaluator& ev, double log_unit) {
  check_log_unit(log_unit);
  const auto d = static_cast<std::size_t>(ev.block_size());
  if (s.size() < 2 * d) throw DataError("string is shorter than two blocks");
  StringSegmentation out;
  out.footprint = perturb::string_footprint(s, ev, perturb::EditMode::Flip);
  const auto& c = out.footprint.contribution;
  for (std::size_t b = 0; b < s.size(); b += d) {
    const std::size_t e = std::min(s.size(), b + d);
    out.block_means.push_back(std::accumulate(c.begin() + b, c.begin() + e, 0.0) / static_cast<double>(e - b));
  }
  // Change-points: consecutive block means whose jump departs from the
  // log unit by more than epsilon.
  std::vector<double> jumps;
  for (std::size_t i = 0; i + 1 < out.block_means.size(); ++i)
    jumps.push_back(std::abs(out.block_means[i + 1] - out.block_means[i]));
  out.epsilon = jumps.size() >= 2 ? epsilon_of(jumps, log_unit) : 0.0;
  for (std::size_t i = 0; i < jumps.size(); ++i)
    if (jumps[i] - log_unit > out.epsilon) out.boundaries.push_back((i + 1) * d);
  std::size_t begin = 0;
  for (std::size_t b : out.boundaries) {
    out.segments.emplace_back(begin, b);
    begin = b;
  }
  out.segments.emplace_back(begin, s.size());
  return out;
}

}  // namespace algodecon::deconvolve
