#include "algodecon/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "algodecon/baselines.hpp"
#include "algodecon/ca.hpp"
#include "algodecon/error.hpp"
#include "algodecon/graph.hpp"
#include "algodecon/plot.hpp"
#include "algodecon/stats.hpp"

#ifndef ALGODECON_VERSION
#define ALGODECON_VERSION "0.0.0"
#endif

namespace algodecon::experiments {

namespace fs = std::filesystem;
using io::num;

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads; results keep index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int workers, Fn fn) {
  std::vector<T> out(n);
  unsigned w = workers > 0 ? static_cast<unsigned>(workers) : std::max(1U, std::thread::hardware_concurrency());
  w = static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(n, 1)));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += w) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) s += (i ? "," : "") + std::to_string(seeds[i]);
  return s;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const auto lo = std::stoull(item.substr(0, dash)), hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw UsageError("bad seed range '" + item + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
      } else if (!item.empty()) {
        out.push_back(std::stoull(item));
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad seed list '" + text + "'");
    }
    pos = comma + 1;
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw UsageError("config key '" + key + "' needs an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw UsageError("config key '" + key + "' needs a number, got '" + v + "'");
  }
}

std::string table_dir() {
  const char* env = std::getenv("ALGODECON_TABLE_DIR");
  return env && *env ? env : "tables";
}

struct Writer {
  ExperimentResult& result;
  bool plots;

  void text(const std::string& name, const std::string& body) {
    io::write_text(result.out_dir / name, body);
    result.files.emplace_back(name);
  }
  void csv(const std::string& name, const io::Csv& c) { text(name, c.str()); }
  void svg(const std::string& name, const io::Csv& c, plot::Kind kind, const plot::Options& opt) {
    if (plots) text(name, plot::emit_plot(c, kind, opt));
  }
};

void aggregate_row(io::Csv& agg, const std::string& metric, const std::vector<double>& v) {
  agg.rows.push_back({metric, num(stats::mean(v)), num(stats::stderr_of_mean(v)), std::to_string(v.size())});
}

io::Csv aggregate_csv() { return io::Csv{{"metric", "mean", "stderr", "n"}, {}}; }

io::Csv signature_csv(const perturb::InformationSignature& sig, const graphs::Graph& g,
                      const std::vector<std::size_t>& breaks = {}) {
  io::Csv c{{"rank", "u", "v", "contribution", "label", "break"}, {}};
  for (std::size_t i = 0; i < sig.entries.size(); ++i) {
    const auto& e = sig.entries[i];
    const bool is_break = std::find(breaks.begin(), breaks.end(), i) != breaks.end();
    c.rows.push_back({std::to_string(i), std::to_string(e.edge.u), std::to_string(e.edge.v), num(e.bits),
                      g.has_labels() ? std::to_string(g.edge_label(e.edge)) : "", is_break ? "1" : "0"});
  }
  return c;
}

io::Csv grid_footprint_csv(const perturb::Footprint& fp) {
  io::Csv c{{"row", "col", "contribution", "class"}, {}};
  for (std::size_t i = 0; i < fp.contribution.size(); ++i)
    c.rows.push_back({std::to_string(i / fp.cols), std::to_string(i % fp.cols), num(fp.contribution[i]),
                      perturb::class_name(fp.classes[i])});
  return c;
}

// ---------------------------------------------------------------- fig1-string

// BDM of the partition blocks lying inside [begin, end), per block.
double mean_block_bits(const BitString& s, std::size_t begin, std::size_t end, const bdm::Evaluator& ev) {
  const auto d = static_cast<std::size_t>(ev.block_size());
  BitString inside;
  for (std::size_t b = 0; b + d <= s.size(); b += d)
    if (b >= begin && b + d <= end) inside.insert(inside.end(), s.begin() + b, s.begin() + b + d);
  if (inside.empty()) return std::numeric_limits<double>::quiet_NaN();
  return ev.bdm(inside).bits / static_cast<double>(inside.size() / d);
}

void run_fig1(const ExperimentConfig& cfg, Writer& w) {
  const auto table = ctm::load_table_file(cfg.table_1d_path());
  const bdm::Evaluator ev(table, cfg.string_block);
  const auto seeds = cfg.effective_seeds();

  struct Rep {
    long boundary = -1;
    std::size_t segments = 0;
    double periodic = 0, random = 0;
  };
  auto reps = parallel_map<Rep>(seeds.size(), cfg.workers, [&](std::size_t i) {
    const auto s = fig1_string(seeds[i]);
    const auto seg = deconvolve::deconvolve_string(s, ev, cfg.log_unit);
    Rep r;
    r.segments = seg.segments.size();
    r.boundary = seg.boundaries.empty() ? -1 : static_cast<long>(seg.boundaries.front());
    const std::size_t cut = seg.boundaries.empty() ? s.size() : seg.boundaries.front();
    r.periodic = mean_block_bits(s, 0, cut, ev);
    r.random = mean_block_bits(s, cut, s.size(), ev);
    return r;
  });

  io::Csv rep{{"seed", "boundary", "segments", "periodic_block_bits", "random_block_bits"}, {}};
  std::vector<double> within, ordered;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& r = reps[i];
    rep.rows.push_back({std::to_string(seeds[i]), std::to_string(r.boundary), std::to_string(r.segments),
                        num(r.periodic), num(r.random)});
    within.push_back(r.boundary >= 0 && std::abs(r.boundary - 52) <= 6 ? 1.0 : 0.0);
    ordered.push_back(r.periodic < r.random ? 1.0 : 0.0);
  }
  w.csv("replicates.csv", rep);

  // Footprints of the reference string and of its reversal.
  const auto ref = parse_bits(reference_string());
  BitString reversed(ref.rbegin(), ref.rend());
  const auto fwd = deconvolve::deconvolve_string(ref, ev, cfg.log_unit);
  const auto rev = deconvolve::deconvolve_string(reversed, ev, cfg.log_unit);
  io::Csv fp{{"position", "bit", "contribution", "class", "reversed_contribution"}, {}};
  for (std::size_t i = 0; i < ref.size(); ++i)
    fp.rows.push_back({std::to_string(i), std::to_string(ref[i]), num(fwd.footprint.contribution[i]),
                       perturb::class_name(fwd.footprint.classes[i]), num(rev.footprint.contribution[i])});
  w.csv("footprint.csv", fp);
  io::Csv blocks{{"block", "start", "mean_contribution", "boundary"}, {}};
  const auto d = static_cast<std::size_t>(ev.block_size());
  for (std::size_t b = 0; b < fwd.block_means.size(); ++b) {
    const bool at = std::find(fwd.boundaries.begin(), fwd.boundaries.end(), b * d) != fwd.boundaries.end();
    blocks.rows.push_back({std::to_string(b), std::to_string(b * d), num(fwd.block_means[b]), at ? "1" : "0"});
  }
  w.csv("block_means.csv", blocks);
  w.svg("footprint.svg", fp, plot::Kind::Line, {"position", "contribution", "", "", "bit-flip footprint"});
  w.svg("block_means.svg", blocks, plot::Kind::Line, {"start", "mean_contribution", "", "boundary", "block means"});

  auto agg = aggregate_csv();
  std::vector<double> per, ran;
  for (const auto& r : reps) {
    per.push_back(r.periodic);
    ran.push_back(r.random);
  }
  aggregate_row(agg, "periodic_block_bits", per);
  aggregate_row(agg, "random_block_bits", ran);
  aggregate_row(agg, "boundary_within_6", within);
  aggregate_row(agg, "periodic_below_random", ordered);
  w.csv("aggregate.csv", agg);

  auto& s = w.result.summary;
  s["reference_boundary"] = fwd.boundaries.empty() ? -1.0 : static_cast<double>(fwd.boundaries.front());
  s["reversed_last_boundary"] = rev.boundaries.empty() ? -1.0 : static_cast<double>(rev.boundaries.back());
  s["reference_segments"] = static_cast<double>(fwd.segments.size());
  s["seeds"] = static_cast<double>(seeds.size());
  s["boundary_within_6_count"] = std::accumulate(within.begin(), within.end(), 0.0);
  s["periodic_below_random_count"] = std::accumulate(ordered.begin(), ordered.end(), 0.0);
}

// ---------------------------------------------------------------- CA helpers

ca::Interaction interaction_of(const ExperimentConfig& cfg, std::uint64_t seed) {
  ca::Interaction in;
  in.rule_a = ca::EcaRule(cfg.rule_a);
  in.rule_b = ca::EcaRule(cfg.rule_b);
  if (cfg.inter == "random") {
    in.table.reset();
    in.random_seed = seed;
  } else {
    in.table = ca::InteractionRule(to_int("inter", cfg.inter));
  }
  return in;
}

ca::StateGrid ca_grid(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto init = ca::split_random_init(static_cast<std::size_t>(cfg.ca_width), seed);
  return ca::interacting_evolve(interaction_of(cfg, seed), init, cfg.ca_steps);
}

// Share of non-white cells whose owner (A for -1, B for +1) matches the
// better of the two labelings {largest -> A, second -> B} and its swap.
double mask_agreement(const ca::StateGrid& sg, const deconvolve::GridSegmentation& seg) {
  std::vector<int> label(sg.cells().size(), -1);
  for (std::size_t k = 0; k < std::min<std::size_t>(2, seg.components.size()); ++k)
    for (auto c : seg.components[k]) label[c] = static_cast<int>(k);
  double coloured = 0, same = 0, swapped = 0;
  for (std::size_t c = 0; c < label.size(); ++c) {
    const auto v = sg.cells()[c];
    if (v == 0) continue;
    coloured += 1;
    const int truth = v < 0 ? 0 : 1;
    same += label[c] == truth;
    swapped += label[c] == 1 - truth;
  }
  return coloured > 0 ? std::max(same, swapped) / coloured : 0.0;
}

void run_fig2(const ExperimentConfig& cfg, Writer& w) {
  const auto table = ctm::load_table_file(cfg.table_2d_path());
  const bdm::Evaluator ev(table, cfg.grid_block);
  const auto seeds = cfg.effective_seeds();

  struct Rep {
    std::size_t components = 0, regions = 0, area1 = 0, area2 = 0;
    double bits1 = 0, bits2 = 0, agreement = 0;
  };
  auto reps = parallel_map<Rep>(seeds.size(), cfg.workers, [&](std::size_t i) {
    const auto sg = ca_grid(cfg, seeds[i]);
    const auto g = sg.projection();
    const auto seg = deconvolve::segment_grid(g, ev);
    Rep r;
    r.components = seg.components.size();
    r.regions = count_regions(seg, cfg.min_region_fraction);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.area1 = seg.components.size() > 0 ? seg.components[0].size() : 0;
    r.area2 = seg.components.size() > 1 ? seg.components[1].size() : 0;
    r.bits1 = r.area1 ? deconvolve::region_bits_per_cell(g, seg.components[0], ev) : nan;
    r.bits2 = r.area2 ? deconvolve::region_bits_per_cell(g, seg.components[1], ev) : nan;
    r.agreement = mask_agreement(sg, seg);
    return r;
  });

  io::Csv rep{{"seed", "components", "regions", "largest_area", "second_area", "largest_bits_per_cell",
               "second_bits_per_cell", "agreement"},
              {}};
  std::vector<double> b1, b2, agree, two;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& r = reps[i];
    rep.rows.push_back({std::to_string(seeds[i]), std::to_string(r.components), std::to_string(r.regions),
                        std::to_string(r.area1), std::to_string(r.area2), num(r.bits1), num(r.bits2),
                        num(r.agreement)});
    if (std::isfinite(r.bits1)) b1.push_back(r.bits1);
    if (std::isfinite(r.bits2)) b2.push_back(r.bits2);
    agree.push_back(r.agreement);
    two.push_back(r.regions >= 2 ? 1.0 : 0.0);
  }
  w.csv("replicates.csv", rep);

  // Seed 0 (first seed) rendered in full.
  const auto sg = ca_grid(cfg, seeds.front());
  std::string states;
  for (const auto& row : sg.to_rows()) states += row + "\n";
  w.text("states.txt", states);
  const auto seg = deconvolve::segment_grid(sg.projection(), ev);
  const auto fp = grid_footprint_csv(seg.footprint);
  w.csv("footprint.csv", fp);
  io::Csv regions{{"row", "col", "region"}, {}};
  std::vector<long> region_of(sg.cells().size(), -1);
  for (std::size_t k = 0; k < seg.components.size(); ++k)
    for (auto c : seg.components[k]) region_of[c] = static_cast<long>(k);
  for (std::size_t c = 0; c < region_of.size(); ++c)
    regions.rows.push_back({std::to_string(c / sg.cols()), std::to_string(c % sg.cols()), std::to_string(region_of[c])});
  w.csv("regions.csv", regions);
  w.svg("footprint.svg", fp, plot::Kind::Heatmap, {"col", "row", "class", "", "footprint classes"});

  auto agg = aggregate_csv();
  if (!b1.empty()) aggregate_row(agg, "largest_bits_per_cell", b1);
  if (!b2.empty()) aggregate_row(agg, "second_bits_per_cell", b2);
  aggregate_row(agg, "agreement", agree);
  aggregate_row(agg, "two_regions", two);
  w.csv("aggregate.csv", agg);

  auto& s = w.result.summary;
  s["seeds"] = static_cast<double>(seeds.size());
  s["two_region_count"] = std::accumulate(two.begin(), two.end(), 0.0);
  s["mann_whitney_p"] = b1.empty() || b2.empty() ? 1.0 : stats::mann_whitney_p(b1, b2);
  s["mean_agreement"] = stats::mean(agree);
}

// ---------------------------------------------------------------- graph helpers

std::uint64_t part_seed(std::uint64_t seed, int part) { return seed * 1000 + static_cast<std::uint64_t>(part) + 1; }

void run_fig3(const ExperimentConfig& cfg, Writer& w) {
  const auto table = ctm::load_table_file(cfg.table_2d_path());
  const bdm::Evaluator ev(table, cfg.graph_block);
  const auto seeds = cfg.effective_seeds();
  const std::vector<std::string> cases{"k20-ba", "er-ba"};

  auto make = [&](std::size_t c, std::uint64_t seed) {
    graphs::Graph first = c == 0 ? graphs::gen_complete(20) : graphs::gen_er(100, 0.5, part_seed(seed, 0));
    return graphs::compose({first, graphs::gen_ba(100, 2, part_seed(seed, 1))}, cfg.connectors, seed);
  };

  io::Csv rep{{"case", "seed", "mean_jaccard", "precision", "recall", "connector_recall", "connector_precision",
               "false_positive_rate", "removed", "waves", "evaluations"},
              {}};
  auto agg = aggregate_csv();
  auto& s = w.result.summary;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    auto scores = parallel_map<std::pair<graphs::Score, deconvolve::GraphDeconvolution>>(
        seeds.size(), cfg.workers, [&](std::size_t i) {
          const auto g = make(c, seeds[i]);
          auto r = deconvolve::deconvolve_n(g, 2, ev, cfg.policy);
          return std::make_pair(graphs::score(r.components, r.removed_edges(), g), std::move(r));
        });
    std::vector<double> jac;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto& [sc, r] = scores[i];
      rep.rows.push_back({cases[c], std::to_string(seeds[i]), num(sc.mean_jaccard), num(sc.precision), num(sc.recall),
                          num(sc.connector_recall), num(sc.connector_precision), num(sc.false_positive_rate),
                          std::to_string(r.removed.size()), std::to_string(r.waves.size()),
                          std::to_string(r.evaluations)});
      jac.push_back(sc.mean_jaccard);
    }
    aggregate_row(agg, cases[c] + "_mean_jaccard", jac);
    s[cases[c] + "_mean_jaccard"] = stats::mean(jac);

    const auto g0 = make(c, seeds.front());
    const auto sig = signature_csv(perturb::signature(g0, ev), g0);
    w.csv("signature_" + cases[c] + ".csv", sig);
    w.svg("signature_" + cases[c] + ".svg", sig, plot::Kind::Line, {"rank", "contribution", "", "", cases[c]});
  }
  w.csv("replicates.csv", rep);
  w.csv("aggregate.csv", agg);
  s["seeds"] = static_cast<double>(seeds.size());
}

// star(10) + K10 + E-R(15, 0.5), the E-R part joined to each of the others
// by one random edge.
graphs::Graph fig4_graph(std::uint64_t seed) {
  auto g = graphs::compose({graphs::gen_star(10), graphs::gen_complete(10), graphs::gen_er(15, 0.5, part_seed(seed, 2))},
                           0, seed);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> in10(0, 9), in15(20, 34);
  for (int offset : {0, 10}) {
    const int u = offset + in10(rng), v = in15(rng);
    g.add_edge(u, v);
    g.set_edge_label(graphs::make_edge(u, v), graphs::Graph::kConnector);
  }
  return g;
}

deconvolve::EpsilonPolicy epsilon_policy(const ExperimentConfig& cfg) {
  deconvolve::EpsilonPolicy p;
  p.log_unit = cfg.log_unit;
  if (cfg.epsilon == "auto") {
    p.estimation = deconvolve::EpsilonPolicy::Estimation::SignatureDerived;
  } else {
    p.estimation = deconvolve::EpsilonPolicy::Estimation::Fixed;
    p.epsilon = to_double("epsilon", cfg.epsilon);
    if (p.epsilon < 0) throw UsageError("epsilon must be nonnegative");
  }
  return p;
}

void run_fig4(const ExperimentConfig& cfg, Writer& w) {
  const auto table = ctm::load_table_file(cfg.table_2d_path());
  const bdm::Evaluator ev(table, cfg.graph_block);
  const auto seeds = cfg.effective_seeds();
  const auto policy = epsilon_policy(cfg);

  struct Rep {
    double epsilon = 0;
    std::size_t breaks = 0, positive_breaks = 0, removed = 0, components = 0;
    std::vector<double> jac;
    bool aligned = false;
  };
  auto reps = parallel_map<Rep>(seeds.size(), cfg.workers, [&](std::size_t i) {
    const auto g = fig4_graph(seeds[i]);
    const auto r = deconvolve::deconvolve_auto(g, policy, ev);
    Rep out;
    out.epsilon = r.epsilon;
    out.breaks = r.breaks.size();
    const auto values = r.signature->values();
    for (auto b : r.breaks) out.positive_breaks += values[b + 1] > 0.0;
    out.removed = r.removed.size();
    out.components = r.components.size();
    std::vector<std::vector<int>> top(r.components.begin(),
                                      r.components.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, r.components.size())));
    const auto sc = graphs::score(top, r.removed_edges(), g);
    out.jac = sc.jaccard;
    out.aligned = top.size() == 3 && std::all_of(sc.jaccard.begin(), sc.jaccard.end(), [](double j) { return j >= 0.8; });
    return out;
  });

  io::Csv rep{{"seed", "epsilon", "breaks", "positive_breaks", "removed", "components", "jaccard_star", "jaccard_complete", "jaccard_er",
               "aligned"},
              {}};
  std::vector<double> aligned, breaks3;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& r = reps[i];
    rep.rows.push_back({std::to_string(seeds[i]), num(r.epsilon), std::to_string(r.breaks),
                        std::to_string(r.positive_breaks), std::to_string(r.removed),
                        std::to_string(r.components), num(r.jac.at(0)), num(r.jac.at(1)), num(r.jac.at(2)),
                        r.aligned ? "1" : "0"});
    aligned.push_back(r.aligned);
    breaks3.push_back(r.breaks >= 3);
  }
  w.csv("replicates.csv", rep);

  const auto g0 = fig4_graph(seeds.front());
  const auto r0 = deconvolve::deconvolve_auto(g0, policy, ev);
  const auto sig = signature_csv(*r0.signature, g0, r0.breaks);
  w.csv("signature.csv", sig);
  w.svg("signature.svg", sig, plot::Kind::Line, {"rank", "contribution", "", "break", "information signature"});

  auto agg = aggregate_csv();
  aggregate_row(agg, "aligned", aligned);
  aggregate_row(agg, "breaks_at_least_3", breaks3);
  w.csv("aggregate.csv", agg);
  auto& s = w.result.summary;
  s["seeds"] = static_cast<double>(seeds.size());
  s["aligned_count"] = std::accumulate(aligned.begin(), aligned.end(), 0.0);
  s["breaks_at_least_3_count"] = std::accumulate(breaks3.begin(), breaks3.end(), 0.0);
}

void run_fig5(const ExperimentConfig& cfg, Writer& w) {
  const auto table = ctm::load_table_file(cfg.table_2d_path());
  const bdm::Evaluator ev(table, cfg.graph_block);
  const auto seeds = cfg.effective_seeds();
  if (cfg.fraction_step <= 0 || cfg.fraction_min <= 0 || cfg.fraction_max >= 1 || cfg.fraction_min > cfg.fraction_max)
    throw UsageError("connector fractions must satisfy 0 < min <= max < 1 and step > 0");
  std::vector<double> fractions;
  const int steps = static_cast<int>(std::floor((cfg.fraction_max - cfg.fraction_min) / cfg.fraction_step + 1e-9));
  for (int k = 0; k <= steps; ++k) fractions.push_back(cfg.fraction_min + k * cfg.fraction_step);

  struct Rep {
    int connectors = 0;
    std::size_t edges = 0;
    graphs::Score score;
  };
  const std::size_t n = fractions.size() * seeds.size();
  auto reps = parallel_map<Rep>(n, cfg.workers, [&](std::size_t idx) {
    const double f = fractions[idx / seeds.size()];
    const auto seed = seeds[idx % seeds.size()];
    const auto ba = graphs::gen_ba(20, 2, part_seed(seed, 0));
    const auto er = graphs::gen_er(20, 0.5, part_seed(seed, 1));
    const double base = static_cast<double>(ba.edge_count() + er.edge_count());
    // Connectors make up fraction f of all edges.
    const int j = std::max(1, static_cast<int>(std::lround(f * base / (1.0 - f))));
    const auto g = graphs::compose({ba, er}, j, seed);
    const auto r = deconvolve::deconvolve_n(g, 2, ev, cfg.policy);
    return Rep{j, g.edge_count(), graphs::score(r.components, r.removed_edges(), g)};
  });

  io::Csv rep{{"fraction", "seed", "connectors", "edges", "connector_precision", "connector_recall",
               "false_positive_rate", "mean_jaccard"},
              {}};
  io::Csv agg{{"fraction", "precision_mean", "precision_stderr", "fpr_mean", "fpr_stderr", "jaccard_mean",
               "jaccard_stderr", "n"},
              {}};
  std::vector<double> beyond_f, beyond_p;
  double min_prec_low = 1.0, max_fpr = 0.0;
  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    std::vector<double> prec, fpr, jac;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const auto& r = reps[fi * seeds.size() + si];
      rep.rows.push_back({num(fractions[fi]), std::to_string(seeds[si]), std::to_string(r.connectors),
                          std::to_string(r.edges), num(r.score.connector_precision), num(r.score.connector_recall),
                          num(r.score.false_positive_rate), num(r.score.mean_jaccard)});
      prec.push_back(r.score.connector_precision);
      fpr.push_back(r.score.false_positive_rate);
      jac.push_back(r.score.mean_jaccard);
    }
    const double pm = stats::mean(prec), fm = stats::mean(fpr);
    agg.rows.push_back({num(fractions[fi]), num(pm), num(stats::stderr_of_mean(prec)), num(fm),
                        num(stats::stderr_of_mean(fpr)), num(stats::mean(jac)), num(stats::stderr_of_mean(jac)),
                        std::to_string(seeds.size())});
    if (fractions[fi] <= 0.30 + 1e-9) min_prec_low = std::min(min_prec_low, pm);
    else {
      beyond_f.push_back(fractions[fi]);
      beyond_p.push_back(pm);
    }
    max_fpr = std::max(max_fpr, fm);
  }
  w.csv("replicates.csv", rep);
  w.csv("aggregate.csv", agg);
  w.svg("precision.svg", agg, plot::Kind::Line, {"fraction", "precision_mean", "", "", "precision vs connector fraction"});
  w.svg("false_positive_rate.svg", agg, plot::Kind::Line, {"fraction", "fpr_mean", "", "", "false-positive rate"});

  auto& s = w.result.summary;
  s["seeds"] = static_cast<double>(seeds.size());
  s["min_precision_le_30"] = min_prec_low;
  s["max_false_positive_rate"] = max_fpr;
  s["spearman_beyond_30"] = beyond_f.size() >= 2 ? stats::spearman(beyond_f, beyond_p) : 0.0;
}

void run_supfig8(const ExperimentConfig& cfg, Writer& w) {
  const auto t1 = ctm::load_table_file(cfg.table_1d_path());
  const auto t2 = ctm::load_table_file(cfg.table_2d_path());
  const bdm::Evaluator ev1(t1, cfg.string_block), ev2(t2, cfg.grid_block);
  const auto seeds = cfg.effective_seeds();
  const baselines::RowScan scan{cfg.window_left, cfg.window_right, cfg.window_stride};

  struct Rep {
    std::size_t bdm = 0, mi = 0, ncd = 0, bdm_regions = 0, entropy_regions = 0;
  };
  auto reps = parallel_map<Rep>(seeds.size(), cfg.workers, [&](std::size_t i) {
    const auto g = ca_grid(cfg, seeds[i]).projection();
    Rep r;
    r.bdm = baselines::distinct_values(baselines::row_window_scan(g, baselines::RowMethod::BdmDifference, scan, &ev1));
    r.mi = baselines::distinct_values(baselines::row_window_scan(g, baselines::RowMethod::MutualInformation, scan));
    r.ncd = baselines::distinct_values(baselines::row_window_scan(g, baselines::RowMethod::Ncd, scan));
    r.bdm_regions = count_regions(deconvolve::segment_grid(g, ev2), cfg.min_region_fraction);
    r.entropy_regions =
        count_regions(deconvolve::segment_footprint(baselines::entropy_footprint(g, cfg.grid_block)), cfg.min_region_fraction);
    return r;
  });

  io::Csv rep{{"seed", "distinct_bdm", "distinct_mi", "distinct_ncd", "bdm_regions", "entropy_regions"}, {}};
  std::vector<double> db, dm, dn, success, order;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& r = reps[i];
    rep.rows.push_back({std::to_string(seeds[i]), std::to_string(r.bdm), std::to_string(r.mi), std::to_string(r.ncd),
                        std::to_string(r.bdm_regions), std::to_string(r.entropy_regions)});
    db.push_back(static_cast<double>(r.bdm));
    dm.push_back(static_cast<double>(r.mi));
    dn.push_back(static_cast<double>(r.ncd));
    success.push_back(r.bdm_regions >= 2 && r.entropy_regions < 2 ? 1.0 : 0.0);
    order.push_back(r.bdm > r.mi && r.bdm > r.ncd ? 1.0 : 0.0);
  }
  w.csv("replicates.csv", rep);
  auto agg = aggregate_csv();
  aggregate_row(agg, "distinct_bdm", db);
  aggregate_row(agg, "distinct_mi", dm);
  aggregate_row(agg, "distinct_ncd", dn);
  aggregate_row(agg, "bdm_beats_entropy", success);
  w.csv("aggregate.csv", agg);

  // Row-window profiles of the first seed, one column per method.
  const auto g0 = ca_grid(cfg, seeds.front()).projection();
  const auto sb = baselines::row_window_scan(g0, baselines::RowMethod::BdmDifference, scan, &ev1);
  const auto sm = baselines::row_window_scan(g0, baselines::RowMethod::MutualInformation, scan);
  const auto sn = baselines::row_window_scan(g0, baselines::RowMethod::Ncd, scan);
  io::Csv rows{{"row", "window", "bdm", "mi", "ncd"}, {}};
  for (std::size_t r = 0; r < sb.size(); ++r)
    for (std::size_t k = 0; k < sb[r].size(); ++k)
      rows.rows.push_back({std::to_string(r), std::to_string(k), num(sb[r][k]), num(sm[r][k]), num(sn[r][k])});
  w.csv("row_scores.csv", rows);
  w.svg("row_scores_bdm.svg", rows, plot::Kind::Heatmap, {"window", "row", "bdm", "", "BDM window difference"});

  auto& s = w.result.summary;
  s["seeds"] = static_cast<double>(seeds.size());
  s["mean_distinct_bdm"] = stats::mean(db);
  s["mean_distinct_mi"] = stats::mean(dm);
  s["mean_distinct_ncd"] = stats::mean(dn);
  s["distinct_order_count"] = std::accumulate(order.begin(), order.end(), 0.0);
  s["bdm_beats_entropy_count"] = std::accumulate(success.begin(), success.end(), 0.0);
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"fig1-string",     "fig2-ca",         "fig3-graphs",
                                            "fig4-terminating", "fig5-robustness", "supfig8-sensitivity"};
  return ids;
}

const std::string& reference_string() {
  static const std::string s =
      "0101010101010101010101010101010101010101010101010101"
      "110100101010100000001001100111100110000011100110";
  return s;
}

BitString fig1_string(std::uint64_t seed) {
  auto bits = parse_bits(reference_string());
  if (seed == 0) return bits;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 52; i < bits.size(); ++i) bits[i] = static_cast<std::uint8_t>(rng() & 1U);
  return bits;
}

std::size_t count_regions(const deconvolve::GridSegmentation& seg, double min_fraction) {
  const double cells = static_cast<double>(seg.footprint.rows * seg.footprint.cols);
  std::size_t n = 0;
  for (const auto& c : seg.components) n += static_cast<double>(c.size()) >= min_fraction * cells;
  return n;
}

io::KeyValues ExperimentConfig::to_key_values() const {
  io::KeyValues kv;
  kv["experiment"] = experiment;
  kv["seeds"] = join_seeds(effective_seeds());
  kv["table_1d"] = table_1d_path();
  kv["table_2d"] = table_2d_path();
  kv["out_dir"] = out_dir.string();
  kv["policy"] = deconvolve::policy_name(policy);
  kv["epsilon"] = epsilon;
  kv["log_unit"] = num(log_unit);
  kv["string_block"] = std::to_string(string_block);
  kv["grid_block"] = std::to_string(grid_block);
  kv["graph_block"] = std::to_string(graph_block);
  kv["connectors"] = std::to_string(connectors);
  kv["ca_width"] = std::to_string(ca_width);
  kv["ca_steps"] = std::to_string(ca_steps);
  kv["rule_a"] = std::to_string(rule_a);
  kv["rule_b"] = std::to_string(rule_b);
  kv["inter"] = inter;
  kv["fraction_min"] = num(fraction_min);
  kv["fraction_max"] = num(fraction_max);
  kv["fraction_step"] = num(fraction_step);
  kv["window_left"] = std::to_string(window_left);
  kv["window_right"] = std::to_string(window_right);
  kv["window_stride"] = std::to_string(window_stride);
  kv["min_region_fraction"] = num(min_region_fraction);
  kv["plots"] = plots ? "1" : "0";
  return kv;
}

ExperimentConfig ExperimentConfig::from_key_values(const io::KeyValues& kv) {
  ExperimentConfig c;
  for (const auto& [k, v] : kv) {
    if (k == "experiment") c.experiment = v;
    else if (k == "seeds") c.seeds = parse_seeds(v);
    else if (k == "table_1d") c.table_1d = v;
    else if (k == "table_2d") c.table_2d = v;
    else if (k == "out_dir") c.out_dir = v;
    else if (k == "policy") c.policy = deconvolve::parse_policy(v);
    else if (k == "epsilon") c.epsilon = v;
    else if (k == "log_unit") c.log_unit = to_double(k, v);
    else if (k == "string_block") c.string_block = to_int(k, v);
    else if (k == "grid_block") c.grid_block = to_int(k, v);
    else if (k == "graph_block") c.graph_block = to_int(k, v);
    else if (k == "connectors") c.connectors = to_int(k, v);
    else if (k == "ca_width") c.ca_width = to_int(k, v);
    else if (k == "ca_steps") c.ca_steps = to_int(k, v);
    else if (k == "rule_a") c.rule_a = to_int(k, v);
    else if (k == "rule_b") c.rule_b = to_int(k, v);
    else if (k == "inter") c.inter = v;
    else if (k == "fraction_min") c.fraction_min = to_double(k, v);
    else if (k == "fraction_max") c.fraction_max = to_double(k, v);
    else if (k == "fraction_step") c.fraction_step = to_double(k, v);
    else if (k == "window_left") c.window_left = to_int(k, v);
    else if (k == "window_right") c.window_right = to_int(k, v);
    else if (k == "window_stride") c.window_stride = to_int(k, v);
    else if (k == "min_region_fraction") c.min_region_fraction = to_double(k, v);
    else if (k == "workers") c.workers = to_int(k, v);
    else if (k == "plots") c.plots = v == "1" || v == "true";
    else if (k == "version" || k == "table_1d_checksum" || k == "table_2d_checksum" || k == "compressor") continue;
    else throw UsageError("unknown config key '" + k + "'");
  }
  return c;
}

std::vector<std::uint64_t> ExperimentConfig::effective_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> s(experiment == "fig5-robustness" ? 10 : 20);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

std::string ExperimentConfig::table_1d_path() const {
  return table_1d.empty() ? (fs::path(table_dir()) / "ctm-3-2-1d.tbl").string() : table_1d;
}

std::string ExperimentConfig::table_2d_path() const {
  return table_2d.empty() ? (fs::path(table_dir()) / "ctm-3-2-2d.tbl").string() : table_2d;
}

ExperimentConfig load_manifest(const fs::path& path) {
  const auto kv = io::parse_key_values(io::read_text(path));
  auto cfg = ExperimentConfig::from_key_values(kv);
  // Refuse to rerun against a different table.
  for (const auto& [key, file] : {std::pair{"table_1d_checksum", cfg.table_1d_path()},
                                  std::pair{"table_2d_checksum", cfg.table_2d_path()}}) {
    const auto it = kv.find(key);
    if (it == kv.end()) continue;
    if (ctm::table_checksum(ctm::load_table_file(file)) != it->second)
      throw TableError(std::string(key) + " does not match " + file);
  }
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), cfg.experiment) == ids.end())
    throw UsageError("unknown experiment '" + cfg.experiment + "'");
  if (cfg.effective_seeds().empty()) throw UsageError("no seeds");

  const bool needs_1d = cfg.experiment == "fig1-string" || cfg.experiment == "supfig8-sensitivity";
  const bool needs_2d = cfg.experiment != "fig1-string";
  for (const auto& [need, file] : {std::pair{needs_1d, cfg.table_1d_path()}, std::pair{needs_2d, cfg.table_2d_path()}})
    if (need && !fs::exists(file)) throw TableError("table not found: " + file);

  ExperimentResult result;
  result.out_dir = cfg.out_dir;
  fs::create_directories(cfg.out_dir);
  Writer w{result, cfg.plots};

  auto manifest = cfg.to_key_values();
  manifest["version"] = ALGODECON_VERSION;
  if (needs_1d) manifest["table_1d_checksum"] = ctm::table_checksum(ctm::load_table_file(cfg.table_1d_path()));
  if (needs_2d) manifest["table_2d_checksum"] = ctm::table_checksum(ctm::load_table_file(cfg.table_2d_path()));
  if (cfg.experiment == "supfig8-sensitivity") manifest["compressor"] = baselines::Compressor{}.describe();
  w.text("manifest.txt", io::format_key_values(manifest));

  if (cfg.experiment == "fig1-string") run_fig1(cfg, w);
  else if (cfg.experiment == "fig2-ca") run_fig2(cfg, w);
  else if (cfg.experiment == "fig3-graphs") run_fig3(cfg, w);
  else if (cfg.experiment == "fig4-terminating") run_fig4(cfg, w);
  else if (cfg.experiment == "fig5-robustness") run_fig5(cfg, w);
  else run_supfig8(cfg, w);

  io::Csv summary{{"metric", "value"}, {}};
  for (const auto& [k, v] : result.summary) summary.rows.push_back({k, num(v)});
  w.csv("summary.csv", summary);
  return result;
}

}  // namespace algodecon::experiments
