#include "algodecon/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>

#include "algodecon/error.hpp"

namespace algodecon::graphs {

Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Graph::Graph(int nodes) : n_(nodes), adj_(nodes) {
  if (nodes < 0) throw UsageError("negative node count");
}

bool Graph::has_edge(int a, int b) const {
  if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) return false;
  return edges_.count(make_edge(a, b)) > 0;
}

bool Graph::add_edge(int a, int b) {
  if (a == b) throw DataError("self-loops are not allowed");
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw DataError("edge endpoint out of range");
  if (!edges_.insert(make_edge(a, b)).second) return false;
  adj_[a].push_back(b);
  adj_[b].push_back(a);
  return true;
}

void Graph::remove_edge(int a, int b) {
  if (edges_.erase(make_edge(a, b)) == 0) throw DataError("edge not in graph");
  std::erase(adj_[a], b);
  std::erase(adj_[b], a);
}

int Graph::add_node() {
  adj_.emplace_back();
  if (!node_labels_.empty()) node_labels_.push_back(-2);
  return n_++;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = static_cast<int>(adj_[i].size());
  return d;
}

Grid Graph::adjacency() const {
  Grid g(n_, n_);
  for (const auto& e : edges_) {
    g(e.u, e.v) = 1;
    g(e.v, e.u) = 1;
  }
  return g;
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<int> seen(n_, 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int w : adj_[comp[i]])
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

int Graph::component_count() const { return static_cast<int>(components().size()); }

void Graph::set_node_labels(std::vector<int> labels) {
  if (static_cast<int>(labels.size()) != n_) throw DataError("label count does not match node count");
  node_labels_ = std::move(labels);
}

int Graph::edge_label(const Edge& e) const {
  auto it = std::lower_bound(edge_labels_.begin(), edge_labels_.end(), e,
                             [](const auto& p, const Edge& key) { return p.first < key; });
  if (it != edge_labels_.end() && it->first == e) return it->second;
  // Derive from node labels when no explicit edge label exists.
  if (node_labels_.empty()) throw DataError("graph has no labels");
  const int a = node_labels_[e.u], b = node_labels_[e.v];
  return a == b ? a : kConnector;
}

void Graph::set_edge_label(const Edge& e, int label) {
  auto it = std::lower_bound(edge_labels_.begin(), edge_labels_.end(), e,
                             [](const auto& p, const Edge& key) { return p.first < key; });
  if (it != edge_labels_.end() && it->first == e) it->second = label;
  else edge_labels_.insert(it, {e, label});
}

Graph gen_complete(int n) {
  if (n < 1) throw UsageError("complete graph needs n >= 1");
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph gen_star(int n) {
  if (n < 1) throw UsageError("star needs n >= 1");
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(0, i);
  return g;
}

Graph gen_cycle(int n) {
  if (n < 3) throw UsageError("cycle needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph gen_ktree(int arity, int depth) {
  if (arity < 2 || depth < 1) throw UsageError("k-ary tree needs arity >= 2 and depth >= 1");
  long long nodes = 0, level = 1;
  for (int d = 0; d < depth; ++d) {
    nodes += level;
    level *= arity;
    if (nodes > 1'000'000) throw UsageError("k-ary tree too large");
  }
  Graph g(static_cast<int>(nodes));
  for (int child = 1; child < nodes; ++child) g.add_edge((child - 1) / arity, child);
  return g;
}

Graph gen_er(int n, double p, std::uint64_t seed) {
  if (n < 1) throw UsageError("E-R graph needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("E-R density must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit(rng) < p) g.add_edge(i, j);
  return g;
}

Graph gen_ba(int n, int k, std::uint64_t seed) {
  if (n < 3) throw UsageError("BA graph needs n >= 3");
  if (k < 1) throw UsageError("BA graph needs k >= 1");
  Graph g(n);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  std::mt19937_64 rng(seed);
  std::vector<long long> degree(n, 0);
  degree[0] = degree[1] = degree[2] = 2;
  for (int v = 3; v < n; ++v) {
    if (k >= v) throw UsageError("BA attachment needs k < current node count");
    std::vector<long long> weight(degree.begin(), degree.begin() + v);
    std::vector<int> targets;
    for (int draw = 0; draw < k; ++draw) {
      const long long total = std::accumulate(weight.begin(), weight.end(), 0LL);
      std::uniform_int_distribution<long long> pick(0, total - 1);
      long long r = pick(rng);
      int t = 0;
      while (r >= weight[t]) r -= weight[t++];
      targets.push_back(t);
      weight[t] = 0;  // without replacement
    }
    for (int t : targets) {
      g.add_edge(v, t);
      ++degree[t];
      ++degree[v];
    }
  }
  return g;
}

Graph generate(const PartSpec& part) {
  switch (part.family) {
    case Family::Complete: return gen_complete(part.n);
    case Family::Star: return gen_star(part.n);
    case Family::Cycle: return gen_cycle(part.n);
    case Family::KTree: return gen_ktree(part.n, part.k);
    case Family::ErdosRenyi: return gen_er(part.n, part.p, part.seed);
    case Family::BarabasiAlbert: return gen_ba(part.n, part.k, part.seed);
  }
  throw UsageError("unknown graph family");
}

std::string describe(const PartSpec& part) {
  std::ostringstream s;
  switch (part.family) {
    case Family::Complete: s << "complete(" << part.n << ")"; break;
    case Family::Star: s << "star(" << part.n << ")"; break;
    case Family::Cycle: s << "cycle(" << part.n << ")"; break;
    case Family::KTree: s << "ktree(" << part.n << "," << part.k << ")"; break;
    case Family::ErdosRenyi: s << "er(" << part.n << "," << part.p << ",seed=" << part.seed << ")"; break;
    case Family::BarabasiAlbert: s << "ba(" << part.n << "," << part.k << ",seed=" << part.seed << ")"; break;
  }
  return s.str();
}

Graph compose(const std::vector<Graph>& parts, int connectors, std::uint64_t seed) {
  if (parts.empty()) throw UsageError("composition needs at least one part");
  if (connectors < 0) throw UsageError("connector count must be non-negative");
  std::vector<int> offset;
  int total = 0;
  long long possible = 0;
  for (const auto& p : parts) {
    possible += static_cast<long long>(total) * p.node_count();
    offset.push_back(total);
    total += p.node_count();
  }
  if (connectors > possible) throw UsageError("more connectors than distinct inter-part pairs");

  Graph g(total);
  std::vector<int> labels(total);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int v = 0; v < parts[i].node_count(); ++v) labels[offset[i] + v] = static_cast<int>(i);
    for (const auto& e : parts[i].edges()) {
      g.add_edge(offset[i] + e.u, offset[i] + e.v);
      g.set_edge_label(make_edge(offset[i] + e.u, offset[i] + e.v), static_cast<int>(i));
    }
  }
  g.set_node_labels(std::move(labels));

  std::mt19937_64 rng(seed);
  const int n_parts = static_cast<int>(parts.size());
  std::uniform_int_distribution<int> pick_part(0, n_parts - 1);
  int added = 0;
  while (added < connectors) {
    const int a = pick_part(rng);
    int b = pick_part(rng);
    if (a == b || parts[a].node_count() == 0 || parts[b].node_count() == 0) continue;
    std::uniform_int_distribution<int> na(0, parts[a].node_count() - 1), nb(0, parts[b].node_count() - 1);
    const int u = offset[a] + na(rng), v = offset[b] + nb(rng);
    if (!g.add_edge(u, v)) continue;  // resample duplicates
    g.set_edge_label(make_edge(u, v), Graph::kConnector);
    ++added;
  }
  return g;
}

Graph compose(const CompositionSpec& spec) {
  std::vector<Graph> parts;
  for (const auto& p : spec.parts) parts.push_back(generate(p));
  return compose(parts, spec.connectors, spec.seed);
}

std::vector<int> hungarian_max(const std::vector<std::vector<double>>& weight) {
  const int rows = static_cast<int>(weight.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(weight[0].size());
  const int n = std::max(rows, cols);
  double wmax = 0.0;
  for (const auto& r : weight) {
    if (static_cast<int>(r.size()) != cols) throw UsageError("ragged weight matrix");
    for (double w : r) wmax = std::max(wmax, w);
  }
  // Square min-cost problem on cost = wmax - weight (padding costs wmax).
  auto cost = [&](int i, int j) { return (i < rows && j < cols) ? wmax - weight[i][j] : wmax; };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assign(rows, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] >= 1 && p[j] <= rows && j <= cols) assign[p[j] - 1] = j - 1;
  return assign;
}

Score score(const std::vector<std::vector<int>>& found, const std::vector<Edge>& removed, const Graph& truth) {
  if (!truth.has_labels()) throw DataError("scoring needs ground-truth labels");
  const auto& labels = truth.node_labels();
  int n_parts = 0;
  for (int l : labels) n_parts = std::max(n_parts, l + 1);
  std::vector<std::vector<int>> parts(n_parts);
  for (int v = 0; v < truth.node_count(); ++v)
    if (labels[v] >= 0) parts[labels[v]].push_back(v);

  // |F ∩ T| via per-node label lookup.
  std::vector<std::vector<double>> inter(n_parts, std::vector<double>(found.size(), 0.0));
  for (std::size_t f = 0; f < found.size(); ++f)
    for (int v : found[f])
      if (v >= 0 && v < truth.node_count() && labels[v] >= 0) inter[labels[v]][f] += 1.0;

  std::vector<std::vector<double>> jac(n_parts, std::vector<double>(found.size(), 0.0));
  for (int t = 0; t < n_parts; ++t)
    for (std::size_t f = 0; f < found.size(); ++f) {
      const double uni = static_cast<double>(parts[t].size() + found[f].size()) - inter[t][f];
      jac[t][f] = uni > 0 ? inter[t][f] / uni : 0.0;
    }

  Score s;
  s.jaccard.assign(n_parts, 0.0);
  double hit = 0.0, found_size = 0.0, true_size = 0.0;
  const auto assign = found.empty() ? std::vector<int>(n_parts, -1) : hungarian_max(jac);
  for (int t = 0; t < n_parts; ++t) {
    true_size += static_cast<double>(parts[t].size());
    if (assign[t] < 0) continue;
    s.jaccard[t] = jac[t][assign[t]];
    hit += inter[t][assign[t]];
    found_size += static_cast<double>(found[assign[t]].size());
  }
  s.mean_jaccard = n_parts ? std::accumulate(s.jaccard.begin(), s.jaccard.end(), 0.0) / n_parts : 0.0;
  s.precision = found_size > 0 ? hit / found_size : 0.0;
  s.recall = true_size > 0 ? hit / true_size : 0.0;

  std::size_t connectors = 0;
  for (const auto& e : truth.edges()) connectors += truth.edge_label(e) == Graph::kConnector;
  const std::size_t others = truth.edge_count() - connectors;
  std::size_t removed_conn = 0, removed_other = 0;
  for (const auto& e : removed) {
    if (truth.edge_label(e) == Graph::kConnector) ++removed_conn;
    else ++removed_other;
  }
  s.connector_recall = connectors ? static_cast<double>(removed_conn) / connectors : 1.0;
  s.connector_precision = removed.empty() ? 0.0 : static_cast<double>(removed_conn) / removed.size();
  s.false_positive_rate = others ? static_cast<double>(removed_other) / others : 0.0;
  return s;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes " << g.node_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  int declared = -1, max_node = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, tag;
      int n = 0;
      if ((ls >> hash >> tag >> n) && tag == "nodes") declared = n;
      continue;
    }
    int a = 0, b = 0;
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra) || a < 0 || b < 0)
      throw DataError("edge list line " + std::to_string(lineno) + ": expected 'u v'");
    if (a == b) throw DataError("edge list line " + std::to_string(lineno) + ": self-loop");
    edges.push_back(make_edge(a, b));
    max_node = std::max({max_node, a, b});
  }
  if (declared >= 0 && declared <= max_node) throw DataError("edge endpoint exceeds declared node count");
  Graph g(std::max(declared, max_node + 1));
  for (const auto& e : edges) g.add_edge(e.u, e.v);
  return g;
}

void write_labels(const Graph& g, std::ostream& out) {
  for (int v = 0; v < g.node_count(); ++v) out << v << ' ' << g.node_labels().at(v) << '\n';
}

void read_labels(Graph& g, std::istream& in) {
  std::vector<int> labels(g.node_count(), -1);
  int v = 0, l = 0;
  while (in >> v >> l) {
    if (v < 0 || v >= g.node_count()) throw DataError("label for unknown node " + std::to_string(v));
    labels[v] = l;
  }
  g.set_node_labels(std::move(labels));
}

}  // namespace algodecon::graphs
