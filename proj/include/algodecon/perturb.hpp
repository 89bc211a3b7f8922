#pragma once

// Information contributions of single-element perturbations:
// contribution(e) = C(object) - C(object with e perturbed). Positive values
// are information loss, negative values information gain.

#include <optional>
#include <vector>

#include "algodecon/bdm.hpp"
#include "algodecon/graph.hpp"

namespace algodecon::perturb {

struct EdgeContribution {
  graphs::Edge edge;
  double bits = 0.0;
};

/// One entry per edge, sorted by contribution descending, ties by edge.
struct InformationSignature {
  double base_bits = 0.0;
  std::vector<EdgeContribution> entries;

  std::vector<double> values() const;
};

/// C(g) - C(g without e), both under g's node order.
double edge_contribution(const graphs::Graph& g, const graphs::Edge& e, const bdm::Evaluator& ev);

InformationSignature signature(const graphs::Graph& g, const bdm::Evaluator& ev);

enum class CellClass : int { Negative = -1, Neutral = 0, Positive = 1 };
const char* class_name(CellClass c);

/// Neutral iff |contribution| <= tau.
CellClass classify(double contribution, double tau);
/// Half the population standard deviation of the contributions.
double default_tau(const std::vector<double>& contributions);

struct Footprint {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double base_bits = 0.0;
  double tau = 0.0;
  std::vector<double> contribution;  // row-major
  std::vector<CellClass> classes;

  void reclassify(double new_tau);
};

Footprint grid_footprint(const Grid& grid, const bdm::Evaluator& ev, std::optional<double> tau = std::nullopt);

enum class EditMode { Flip, Delete };

Footprint string_footprint(const BitString& s, const bdm::Evaluator& ev, EditMode mode,
                           std::optional<double> tau = std::nullopt);

}  // namespace algodecon::perturb
