#pragma once

// Causal deconvolution: cut an object into the components most likely
// produced by distinct generating mechanisms, guided by the information
// contributions of single-element perturbations.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algodecon/bdm.hpp"
#include "algodecon/graph.hpp"
#include "algodecon/perturb.hpp"

namespace algodecon::deconvolve {

/// Edge-selection rule for the fixed-N algorithm.
///  - Literal: among edges with positive contribution delete all that attain
///    the minimum; when no edge is positive fall back to MaxGain.
///  - AlgebraicMin: delete all edges attaining the smallest (most negative)
///    contribution.
///  - MaxGain: the fallback wave, recorded as such in the wave log.
enum class Policy { Literal, AlgebraicMin, MaxGain };
const char* policy_name(Policy p);
Policy parse_policy(const std::string& name);

struct EpsilonPolicy {
  enum class Estimation { Fixed, SignatureDerived };
  double epsilon = 0.0;
  double log_unit = 1.0;  // log2(2): complexities are in bits
  Estimation estimation = Estimation::SignatureDerived;
};

/// Contributions equal within this tolerance are treated as ties.
inline constexpr double kTieTolerance = 1e-9;

struct Wave {
  Policy selection = Policy::Literal;
  std::vector<perturb::EdgeContribution> removed;
};

struct GraphDeconvolution {
  std::vector<std::vector<int>> components;  // as Graph::components()
  std::vector<perturb::EdgeContribution> removed;
  std::vector<Wave> waves;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;  // single-edge contribution evaluations
  Policy policy = Policy::Literal;
  double epsilon = 0.0;                               // auto mode only
  std::vector<std::size_t> breaks;                    // auto mode: positions in the signature
  std::optional<perturb::InformationSignature> signature;  // auto mode
  graphs::Graph result;

  std::vector<graphs::Edge> removed_edges() const;
};

/// Repeats {signature; select per policy; delete} until the graph has at
/// least n components or no edges remain.
GraphDeconvolution deconvolve_n(const graphs::Graph& g, int n, const bdm::Evaluator& ev,
                                Policy policy = Policy::Literal);

/// Break points of a sorted signature: positions i where
/// (c[i] - c[i+1]) - log_unit > epsilon.
std::vector<std::size_t> signature_breaks(const std::vector<double>& sorted_desc, double epsilon, double log_unit);

/// Single signature pass. Cuts every edge above the lowest break whose next
/// entry is still positive; breaks among non-positive entries are reported
/// but never cut.
GraphDeconvolution deconvolve_auto(const graphs::Graph& g, const EpsilonPolicy& policy, const bdm::Evaluator& ev);

/// Median of |d - log_unit| over consecutive differences d of the sorted
/// signature, ignoring the largest 5% of differences.
double estimate_epsilon(const std::vector<double>& sorted_desc, double log_unit = 1.0);
double estimate_epsilon(const perturb::InformationSignature& sig, double log_unit = 1.0);

struct GridSegmentation {
  perturb::Footprint footprint;
  /// 4-connected same-class regions, largest first.
  std::vector<std::vector<std::size_t>> class_regions;
  std::vector<perturb::CellClass> region_class;
  /// The largest negative region, which splits the rest of the grid.
  std::vector<std::size_t> separator;
  /// 4-connected regions of the grid minus the separator, largest first.
  std::vector<std::vector<std::size_t>> components;
};

/// Segments any classified footprint (BDM or a baseline measure).
GridSegmentation segment_footprint(perturb::Footprint footprint);
GridSegmentation segment_grid(const Grid& grid, const bdm::Evaluator& ev, std::optional<double> tau = std::nullopt);

/// BDM per cell of a region: the blocks of the grid partition with more
/// than half of their cells in `region`, valued as one BDM multiset and
/// divided by their total area. NaN when no block qualifies.
double region_bits_per_cell(const Grid& grid, const std::vector<std::size_t>& region, const bdm::Evaluator& ev);

struct StringSegmentation {
  perturb::Footprint footprint;
  std::vector<double> block_means;
  double epsilon = 0.0;
  std::vector<std::size_t> boundaries;  // start index of every segment after the first
  /// Half-open [begin, end) index ranges.
  std::vector<std::pair<std::size_t, std::size_t>> segments;
};

StringSegmentation deconvolve_string(const BitString& s, const bdm::Evaluator& ev, double log_unit = 1.0);

}  // namespace algodecon::deconvolve
