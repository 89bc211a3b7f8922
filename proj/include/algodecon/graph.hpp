#pragma once

// Undirected simple graphs with a stable node order, the generator families
// used in the experiments, seeded composition, and ground-truth scoring.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algodecon/grid.hpp"

namespace algodecon::graphs {

struct Edge {
  int u = 0;
  int v = 0;  // u < v always
  auto operator<=>(const Edge&) const = default;
};

Edge make_edge(int a, int b);

class Graph {
 public:
  static constexpr int kConnector = -1;

  Graph() = default;
  explicit Graph(int nodes);

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<Edge>& edges() const { return edges_; }
  bool has_edge(int a, int b) const;

  /// Returns false if the edge already existed. Loops are rejected.
  bool add_edge(int a, int b);
  void remove_edge(int a, int b);
  int add_node();

  std::vector<int> degrees() const;
  /// Adjacency matrix under the node order.
  Grid adjacency() const;

  /// Connected components as sorted node lists, largest first, ties by
  /// smallest node.
  std::vector<std::vector<int>> components() const;
  int component_count() const;

  // Optional ground truth: part id per node, and per edge (kConnector for
  // inter-part edges).
  bool has_labels() const { return !node_labels_.empty(); }
  const std::vector<int>& node_labels() const { return node_labels_; }
  void set_node_labels(std::vector<int> labels);
  int edge_label(const Edge& e) const;
  void set_edge_label(const Edge& e, int label);

 private:
  int n_ = 0;
  std::set<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> node_labels_;
  std::vector<std::pair<Edge, int>> edge_labels_;  // sorted by edge
};

Graph gen_complete(int n);
Graph gen_star(int n);
Graph gen_cycle(int n);
/// Complete `arity`-ary tree with `depth` levels, nodes in BFS order.
Graph gen_ktree(int arity, int depth);
Graph gen_er(int n, double p, std::uint64_t seed);
/// Preferential attachment from a 3-cycle; each new node links to k distinct
/// existing nodes chosen with probability proportional to degree.
Graph gen_ba(int n, int k, std::uint64_t seed);

enum class Family { Complete, Star, Cycle, KTree, ErdosRenyi, BarabasiAlbert };

struct PartSpec {
  Family family = Family::Complete;
  int n = 1;             // nodes (arity for k-trees)
  int k = 1;             // BA edges per node, k-tree depth
  double p = 0.5;        // E-R density
  std::uint64_t seed = 0;
};

Graph generate(const PartSpec& part);
std::string describe(const PartSpec& part);

struct CompositionSpec {
  std::vector<PartSpec> parts;
  int connectors = 1;
  std::uint64_t seed = 0;
};

/// Disjoint union in part order plus `connectors` distinct random edges,
/// each joining two distinct parts chosen uniformly. Nodes and edges carry
/// part labels; connectors are labelled Graph::kConnector.
Graph compose(const CompositionSpec& spec);
Graph compose(const std::vector<Graph>& parts, int connectors, std::uint64_t seed);

struct Score {
  double mean_jaccard = 0.0;            // over true parts, matched by Hungarian assignment
  std::vector<double> jaccard;          // per true part
  double precision = 0.0;               // node level, over matched found components
  double recall = 0.0;
  double connector_recall = 0.0;        // removed connectors / all connectors
  double connector_precision = 0.0;     // removed connectors / removed edges
  double false_positive_rate = 0.0;     // removed non-connectors / non-connector edges
};

/// Compares found node sets (and removed edges) against the truth labels
/// of `truth`.
Score score(const std::vector<std::vector<int>>& found, const std::vector<Edge>& removed, const Graph& truth);

/// Maximum-weight assignment of rows to columns; returns the column for each
/// row or -1. Rectangular matrices are allowed.
std::vector<int> hungarian_max(const std::vector<std::vector<double>>& weight);

void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);
void write_labels(const Graph& g, std::ostream& out);
void read_labels(Graph& g, std::istream& in);

}  // namespace algodecon::graphs
