// algodecon: command-line front end for the library.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "algodecon/baselines.hpp"
#include "algodecon/bdm.hpp"
#include "algodecon/ca.hpp"
#include "algodecon/ctm.hpp"
#include "algodecon/deconvolve.hpp"
#include "algodecon/error.hpp"
#include "algodecon/experiments.hpp"
#include "algodecon/graph.hpp"
#include "algodecon/io.hpp"
#include "algodecon/perturb.hpp"
#include "algodecon/plot.hpp"

#ifndef ALGODECON_VERSION
#define ALGODECON_VERSION "0.0.0"
#endif

using namespace algodecon;
namespace fs = std::filesystem;
using io::num;

namespace {

enum class ObjectKind { String, Grid, Graph };

ObjectKind parse_object_kind(const std::string& s) {
  if (s == "string") return ObjectKind::String;
  if (s == "grid") return ObjectKind::Grid;
  if (s == "graph") return ObjectKind::Graph;
  throw UsageError("object type must be string, grid or graph");
}

// Graphs are edge lists ("u v"), strings one 0/1 line, grids several.
ObjectKind detect_kind(const std::string& path) {
  std::size_t lines = 0;
  for (const auto& line : io::read_lines(fs::path(path))) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of(" \t") != std::string::npos) return ObjectKind::Graph;
    ++lines;
  }
  if (lines == 0) throw DataError(path + " is empty");
  return lines == 1 ? ObjectKind::String : ObjectKind::Grid;
}

graphs::Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return graphs::read_edge_list(in);
}

std::string default_table(ctm::Dim dim) {
  const char* env = std::getenv("ALGODECON_TABLE_DIR");
  const fs::path dir = env && *env ? env : "tables";
  return (dir / (dim == ctm::Dim::One ? "ctm-3-2-1d.tbl" : "ctm-3-2-2d.tbl")).string();
}

int default_block(ObjectKind k) { return k == ObjectKind::String ? 5 : k == ObjectKind::Grid ? 3 : 4; }

struct ObjectArgs {
  std::string input;
  std::string type;
  std::string table;
  int block = 0;

  void add(CLI::App* app, bool with_type = true) {
    app->add_option("--input", input, "object file")->required();
    if (with_type) app->add_option("--type", type, "string, grid or graph (default: detect)");
    app->add_option("--table", table, "CTM table (default: $ALGODECON_TABLE_DIR)");
    app->add_option("--block", block, "block size (default: 5 strings, 3 grids, 4 graphs)");
  }
  ObjectKind kind() const { return type.empty() ? detect_kind(input) : parse_object_kind(type); }
  bdm::Evaluator evaluator(ObjectKind k, ctm::CtmTable& storage) const {
    storage = ctm::load_table_file(table.empty() ? default_table(k == ObjectKind::String ? ctm::Dim::One : ctm::Dim::Two)
                                                 : table);
    return bdm::Evaluator(storage, block > 0 ? block : default_block(k));
  }
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") std::cout << text;
  else io::write_text(out, text);
}

std::string edge_name(const graphs::Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

template <class T>
std::string list_line(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s + "\n";
}

std::string footprint_csv(const perturb::Footprint& fp) {
  io::Csv c{{"element", "contribution", "class"}, {}};
  for (std::size_t i = 0; i < fp.contribution.size(); ++i)
    c.rows.push_back({std::to_string(i), num(fp.contribution[i]), perturb::class_name(fp.classes[i])});
  return c.str();
}

std::string signature_csv(const perturb::InformationSignature& sig, const std::vector<std::size_t>& breaks = {}) {
  io::Csv c{{"rank", "element", "contribution", "break"}, {}};
  for (std::size_t i = 0; i < sig.entries.size(); ++i) {
    const bool b = std::find(breaks.begin(), breaks.end(), i) != breaks.end();
    c.rows.push_back({std::to_string(i), edge_name(sig.entries[i].edge), num(sig.entries[i].bits), b ? "1" : "0"});
  }
  return c.str();
}

std::uint64_t parse_seeded(const std::string& spec, const std::string& prefix) {
  try {
    return std::stoull(spec.substr(prefix.size()));
  } catch (const std::logic_error&) {
    throw UsageError("expected " + prefix + "SEED, got '" + spec + "'");
  }
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// complete:N star:N cycle:N ktree:ARITY:DEPTH er:N:P ba:N:K
graphs::PartSpec parse_part(const std::string& spec, std::uint64_t seed) {
  const auto f = split(spec, ':');
  graphs::PartSpec p;
  p.seed = seed;
  try {
    const auto& name = f.at(0);
    p.n = std::stoi(f.at(1));
    if (name == "complete") p.family = graphs::Family::Complete;
    else if (name == "star") p.family = graphs::Family::Star;
    else if (name == "cycle") p.family = graphs::Family::Cycle;
    else if (name == "ktree") p.family = graphs::Family::KTree, p.k = std::stoi(f.at(2));
    else if (name == "er") p.family = graphs::Family::ErdosRenyi, p.p = std::stod(f.at(2));
    else if (name == "ba") p.family = graphs::Family::BarabasiAlbert, p.k = std::stoi(f.at(2));
    else throw UsageError("unknown graph family '" + name + "'");
  } catch (const std::logic_error&) {
    throw UsageError("bad part spec '" + spec + "'");
  }
  return p;
}

void write_graph(const graphs::Graph& g, const std::string& out) {
  std::ostringstream os;
  graphs::write_edge_list(g, os);
  emit(out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algorithmic-information deconvolution of strings, grids and graphs"};
  app.set_version_flag("--version", ALGODECON_VERSION);
  app.require_subcommand(1);

  // ---- ctm
  auto* ctm_cmd = app.add_subcommand("ctm", "CTM tables")->require_subcommand(1);
  int states = 2, symbols = 2, dim = 1;
  std::uint64_t cutoff = 0;
  unsigned workers = 0;
  std::string table_out, info_file;
  auto* ctm_build = ctm_cmd->add_subcommand("build", "enumerate a machine class");
  ctm_build->add_option("--states", states)->required();
  ctm_build->add_option("--symbols", symbols);
  ctm_build->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
  ctm_build->add_option("--cutoff", cutoff, "step cutoff (default: per class)");
  ctm_build->add_option("--workers", workers, "threads (default: all)");
  ctm_build->add_option("--out", table_out)->required();
  auto* ctm_info = ctm_cmd->add_subcommand("info", "describe a table");
  ctm_info->add_option("file", info_file)->required();

  // ---- bdm / footprint
  ObjectArgs bdm_args;
  auto* bdm_cmd = app.add_subcommand("bdm", "BDM estimate of an object");
  bdm_args.add(bdm_cmd);

  ObjectArgs fp_args;
  std::string fp_mode = "flip", fp_out;
  auto* fp_cmd = app.add_subcommand("footprint", "per-element information contributions");
  fp_args.add(fp_cmd);
  fp_cmd->add_option("--mode", fp_mode)->check(CLI::IsMember({"flip", "delete"}));
  fp_cmd->add_option("--out", fp_out);

  // ---- deconvolve
  auto* dec_cmd = app.add_subcommand("deconvolve", "split an object into components")->require_subcommand(1);
  ObjectArgs dec_args;
  int dec_n = 0;
  bool dec_auto = false;
  std::string dec_epsilon = "auto", dec_policy = "literal", dec_prefix;
  double log_unit = 1.0;
  std::map<std::string, CLI::App*> dec_sub;
  for (const std::string kind : {"graph", "grid", "string"}) {
    auto* sub = dec_cmd->add_subcommand(kind);
    dec_args.add(sub, false);
    sub->add_option("--out", dec_prefix, "output prefix")->required();
    sub->add_option("--log-unit", log_unit);
    if (kind == "graph") {
      sub->add_option("--n", dec_n, "target component count");
      sub->add_flag("--auto", dec_auto, "stop by the signature break rule");
      sub->add_option("--epsilon", dec_epsilon, "'auto' or a fixed value");
      sub->add_option("--policy", dec_policy)->check(CLI::IsMember({"literal", "algebraic-min", "max-gain"}));
    }
    dec_sub[kind] = sub;
  }

  // ---- ca
  auto* ca_cmd = app.add_subcommand("ca", "cellular automata")->require_subcommand(1);
  int rule = 110, width = 100, steps = 99, rule_a = 60, rule_b = 110;
  std::string ca_init = "single", ca_out, inter = "531441", zero_owner = "auto", split_init = "split:0";
  auto* ca_evolve = ca_cmd->add_subcommand("evolve", "elementary CA space-time grid");
  ca_evolve->add_option("--rule", rule)->check(CLI::Range(0, 255));
  ca_evolve->add_option("--width", width);
  ca_evolve->add_option("--steps", steps);
  ca_evolve->add_option("--init", ca_init, "single or random:SEED");
  ca_evolve->add_option("--out", ca_out);
  auto* ca_interact = ca_cmd->add_subcommand("interact", "two interacting elementary CAs");
  ca_interact->add_option("--rule-a", rule_a)->check(CLI::Range(0, 255));
  ca_interact->add_option("--rule-b", rule_b)->check(CLI::Range(0, 255));
  ca_interact->add_option("--inter", inter, "rule index 1..531441 or random:SEED");
  ca_interact->add_option("--zero-owner", zero_owner)->check(CLI::IsMember({"auto", "A", "B", "white"}));
  ca_interact->add_option("--width", width);
  ca_interact->add_option("--steps", steps);
  ca_interact->add_option("--init", split_init, "split:SEED");
  ca_interact->add_option("--out", ca_out, "output prefix")->required();

  // ---- gen
  auto* gen_cmd = app.add_subcommand("gen", "graph generators")->require_subcommand(1);
  int gen_n = 10, gen_k = 2, arity = 2, depth = 3, connectors = 1;
  double gen_p = 0.5;
  std::uint64_t seed = 0;
  std::string gen_out;
  std::vector<std::string> parts;
  std::map<std::string, CLI::App*> gen_sub;
  for (const std::string fam : {"complete", "star", "cycle", "ktree", "er", "ba", "compose"}) {
    auto* sub = gen_cmd->add_subcommand(fam);
    if (fam == "ktree") {
      sub->add_option("--arity", arity);
      sub->add_option("--depth", depth);
    } else if (fam == "compose") {
      sub->add_option("--part", parts, "complete:N star:N cycle:N ktree:A:D er:N:P ba:N:K")->required();
      sub->add_option("--connectors", connectors);
    } else {
      sub->add_option("--n", gen_n);
    }
    if (fam == "er") sub->add_option("--p", gen_p);
    if (fam == "ba") sub->add_option("--k", gen_k);
    if (fam == "er" || fam == "ba" || fam == "compose") sub->add_option("--seed", seed);
    sub->add_option("--out", gen_out, fam == "compose" ? "output prefix" : "edge list (default: stdout)");
    gen_sub[fam] = sub;
  }

  // ---- baseline
  auto* base_cmd = app.add_subcommand("baseline", "classical measures")->require_subcommand(1);
  std::string b_input, b_x, b_y, b_out, b_method = "bdm", b_table;
  int b_block = 1, left = 6, right = 6, stride = 0, b_level = 9;
  auto* b_entropy = base_cmd->add_subcommand("entropy", "block Shannon entropy of a string or grid");
  b_entropy->add_option("--input", b_input)->required();
  b_entropy->add_option("--block", b_block);
  b_entropy->add_option("--out", b_out);
  auto* b_ncd = base_cmd->add_subcommand("ncd", "normalized compression distance");
  auto* b_mi = base_cmd->add_subcommand("mi", "mutual information of two sequences");
  for (auto* sub : {b_ncd, b_mi}) {
    sub->add_option("--x", b_x)->required();
    sub->add_option("--y", b_y)->required();
    sub->add_option("--out", b_out);
  }
  b_ncd->add_option("--level", b_level)->check(CLI::Range(1, 9));
  auto* b_rowscan = base_cmd->add_subcommand("rowscan", "adjacent-window scores per grid row");
  b_rowscan->add_option("--input", b_input)->required();
  b_rowscan->add_option("--method", b_method)->check(CLI::IsMember({"bdm", "mi", "ncd"}));
  b_rowscan->add_option("--left", left);
  b_rowscan->add_option("--right", right);
  b_rowscan->add_option("--stride", stride, "0: left width");
  b_rowscan->add_option("--table", b_table, "1D table for --method bdm");
  b_rowscan->add_option("--block", b_block);
  b_rowscan->add_option("--out", b_out);

  // ---- experiment
  auto* exp_cmd = app.add_subcommand("experiment", "reproducible experiment runs")->require_subcommand(1);
  std::string config_file, exp_out;
  int exp_workers = -1;
  auto* exp_run = exp_cmd->add_subcommand("run", "run from a key=value config or a manifest");
  exp_run->add_option("--config", config_file)->required();
  exp_run->add_option("--out", exp_out, "override out_dir");
  exp_run->add_option("--workers", exp_workers, "replicate threads (0: all)");
  auto* exp_list = exp_cmd->add_subcommand("list", "experiment ids");

  // ---- plot
  std::string p_input, p_kind = "line", p_out;
  plot::Options popt;
  auto* plot_cmd = app.add_subcommand("plot", "render a CSV as SVG");
  plot_cmd->add_option("--input", p_input)->required();
  plot_cmd->add_option("--kind", p_kind)->check(CLI::IsMember({"line", "scatter", "heatmap"}));
  plot_cmd->add_option("--x", popt.x);
  plot_cmd->add_option("--y", popt.y);
  plot_cmd->add_option("--value", popt.value);
  plot_cmd->add_option("--marker", popt.marker);
  plot_cmd->add_option("--title", popt.title);
  plot_cmd->add_option("--out", p_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ctm_build) {
      const ctm::MachineClass cls{states, symbols, dim == 1 ? ctm::Dim::One : ctm::Dim::Two};
      if (symbols != 2) throw UsageError("only binary machines are supported");
      const auto t = ctm::build_table(cls, cutoff ? cutoff : ctm::default_cutoff(cls),
                                      workers ? workers : std::max(1U, std::thread::hardware_concurrency()));
      ctm::save_table_file(t, table_out);
      std::cout << "machines " << t.total_runs() / 2 << " halted_runs " << t.halted_runs() << " entries "
                << t.counts().size() << " checksum " << ctm::table_checksum(t) << '\n';
    } else if (*ctm_info) {
      const auto t = ctm::load_table_file(info_file);
      const auto& c = t.machine_class();
      std::cout << "class (" << c.states << "," << c.symbols << "," << static_cast<int>(c.dim) << "D)\n"
                << "cutoff " << t.cutoff() << "\ntotal_runs " << t.total_runs() << "\nhalted_runs "
                << t.halted_runs() << "\nentries " << t.counts().size() << "\nmax_bits " << num(t.max_bits())
                << "\nexternal " << (t.external() ? 1 : 0) << "\nchecksum " << ctm::table_checksum(t) << '\n';
    } else if (*bdm_cmd) {
      const auto k = bdm_args.kind();
      ctm::CtmTable t;
      const auto ev = bdm_args.evaluator(k, t);
      bdm::ComplexityEstimate est;
      if (k == ObjectKind::String) est = ev.bdm(io::read_bits(bdm_args.input));
      else if (k == ObjectKind::Grid) est = ev.bdm(io::read_grid(bdm_args.input));
      else est = ev.bdm(read_graph(bdm_args.input).adjacency());
      std::cout << "bits " << num(est.bits) << "\nmethod " << bdm::method_name(est.method) << "\ncoverage "
                << num(est.coverage) << '\n';
    } else if (*fp_cmd) {
      const auto k = fp_args.kind();
      ctm::CtmTable t;
      const auto ev = fp_args.evaluator(k, t);
      if (k == ObjectKind::Graph) {
        emit(fp_out, signature_csv(perturb::signature(read_graph(fp_args.input), ev)));
      } else if (k == ObjectKind::Grid) {
        if (fp_mode != "flip") throw UsageError("grids support --mode flip only");
        emit(fp_out, footprint_csv(perturb::grid_footprint(io::read_grid(fp_args.input), ev)));
      } else {
        const auto mode = fp_mode == "flip" ? perturb::EditMode::Flip : perturb::EditMode::Delete;
        emit(fp_out, footprint_csv(perturb::string_footprint(io::read_bits(fp_args.input), ev, mode)));
      }
    } else if (*dec_cmd) {
      ctm::CtmTable t;
      if (*dec_sub["graph"]) {
        const auto ev = dec_args.evaluator(ObjectKind::Graph, t);
        const auto g = read_graph(dec_args.input);
        if ((dec_n > 0) == dec_auto) throw UsageError("give exactly one of --n and --auto");
        deconvolve::GraphDeconvolution r;
        if (dec_auto) {
          deconvolve::EpsilonPolicy p;
          p.log_unit = log_unit;
          if (dec_epsilon != "auto") {
            p.estimation = deconvolve::EpsilonPolicy::Estimation::Fixed;
            try {
              p.epsilon = std::stod(dec_epsilon);
            } catch (const std::logic_error&) {
              throw UsageError("--epsilon takes 'auto' or a number");
            }
          }
          r = deconvolve::deconvolve_auto(g, p, ev);
        } else {
          r = deconvolve::deconvolve_n(g, dec_n, ev, deconvolve::parse_policy(dec_policy));
        }
        std::string comps;
        for (const auto& c : r.components) comps += list_line(c);
        io::write_text(dec_prefix + ".components", comps);
        io::Csv removed{{"wave", "u", "v", "contribution"}, {}};
        for (std::size_t w = 0; w < r.waves.size(); ++w)
          for (const auto& e : r.waves[w].removed)
            removed.rows.push_back({std::to_string(w), std::to_string(e.edge.u), std::to_string(e.edge.v), num(e.bits)});
        io::write_text(dec_prefix + ".removed.csv", removed.str());
        const auto sig = r.signature ? *r.signature : perturb::signature(g, ev);
        io::write_text(dec_prefix + ".signature.csv", signature_csv(sig, r.breaks));
        std::cout << "components " << r.components.size() << "\nremoved " << r.removed.size() << "\nwaves "
                  << r.waves.size() << "\nevaluations " << r.evaluations << "\nepsilon " << num(r.epsilon) << '\n';
      } else if (*dec_sub["grid"]) {
        const auto ev = dec_args.evaluator(ObjectKind::Grid, t);
        const auto seg = deconvolve::segment_grid(io::read_grid(dec_args.input), ev);
        std::string comps;
        for (const auto& c : seg.components) comps += list_line(c);
        io::write_text(dec_prefix + ".components", comps);
        io::write_text(dec_prefix + ".separator", list_line(seg.separator));
        io::write_text(dec_prefix + ".footprint.csv", footprint_csv(seg.footprint));
        std::cout << "components " << seg.components.size() << "\nseparator " << seg.separator.size() << '\n';
      } else {
        const auto ev = dec_args.evaluator(ObjectKind::String, t);
        const auto seg = deconvolve::deconvolve_string(io::read_bits(dec_args.input), ev, log_unit);
        std::string comps;
        for (const auto& [b, e] : seg.segments) {
          std::vector<std::size_t> idx;
          for (auto i = b; i < e; ++i) idx.push_back(i);
          comps += list_line(idx);
        }
        io::write_text(dec_prefix + ".components", comps);
        io::write_text(dec_prefix + ".footprint.csv", footprint_csv(seg.footprint));
        std::cout << "segments " << seg.segments.size() << "\nboundaries " << list_line(seg.boundaries)
                  << "epsilon " << num(seg.epsilon) << '\n';
      }
    } else if (*ca_evolve) {
      ca::Row init;
      if (ca_init == "single") init = ca::single_cell_row(static_cast<std::size_t>(width));
      else if (starts_with(ca_init, "random:"))
        init = ca::random_row(static_cast<std::size_t>(width), parse_seeded(ca_init, "random:"));
      else throw UsageError("--init takes single or random:SEED");
      std::ostringstream os;
      io::write_grid(ca::eca_evolve(ca::EcaRule(rule), init, steps), os);
      emit(ca_out, os.str());
    } else if (*ca_interact) {
      ca::Interaction in;
      in.rule_a = ca::EcaRule(rule_a);
      in.rule_b = ca::EcaRule(rule_b);
      in.zero_owner = ca::parse_zero_owner(zero_owner);
      if (starts_with(inter, "random:")) {
        in.table.reset();
        in.random_seed = parse_seeded(inter, "random:");
      } else {
        try {
          in.table = ca::InteractionRule(std::stoi(inter));
        } catch (const std::logic_error&) {
          throw UsageError("--inter takes an index or random:SEED");
        }
      }
      if (!starts_with(split_init, "split:")) throw UsageError("--init takes split:SEED");
      const auto init = ca::split_random_init(static_cast<std::size_t>(width), parse_seeded(split_init, "split:"));
      const auto sg = ca::interacting_evolve(in, init, steps);
      std::string states_text;
      for (const auto& r : sg.to_rows()) states_text += r + "\n";
      io::write_text(ca_out + ".states", states_text);
      std::ostringstream proj, ma, mb;
      io::write_grid(sg.projection(), proj);
      io::write_grid(sg.mask(-1), ma);
      io::write_grid(sg.mask(1), mb);
      io::write_text(ca_out + ".grid", proj.str());
      io::write_text(ca_out + ".mask-a", ma.str());
      io::write_text(ca_out + ".mask-b", mb.str());
    } else if (*gen_cmd) {
      if (*gen_sub["compose"]) {
        graphs::CompositionSpec spec;
        spec.connectors = connectors;
        spec.seed = seed;
        for (std::size_t i = 0; i < parts.size(); ++i) spec.parts.push_back(parse_part(parts[i], seed * 1000 + i + 1));
        const auto g = graphs::compose(spec);
        if (gen_out.empty()) throw UsageError("compose needs --out PREFIX");
        write_graph(g, gen_out + ".edges");
        std::ostringstream labels;
        graphs::write_labels(g, labels);
        io::write_text(gen_out + ".labels", labels.str());
      } else {
        graphs::Graph g;
        if (*gen_sub["complete"]) g = graphs::gen_complete(gen_n);
        else if (*gen_sub["star"]) g = graphs::gen_star(gen_n);
        else if (*gen_sub["cycle"]) g = graphs::gen_cycle(gen_n);
        else if (*gen_sub["ktree"]) g = graphs::gen_ktree(arity, depth);
        else if (*gen_sub["er"]) g = graphs::gen_er(gen_n, gen_p, seed);
        else g = graphs::gen_ba(gen_n, gen_k, seed);
        write_graph(g, gen_out);
      }
    } else if (*b_entropy) {
      const auto k = detect_kind(b_input);
      if (k == ObjectKind::Graph) throw UsageError("entropy takes a string or a grid");
      const double h = k == ObjectKind::String ? baselines::shannon_entropy(io::read_bits(b_input), b_block)
                                               : baselines::grid_block_entropy(io::read_grid(b_input), b_block);
      emit(b_out, io::Csv{{"block", "entropy"}, {{std::to_string(b_block), num(h)}}}.str());
    } else if (*b_ncd) {
      const baselines::Compressor z{b_level};
      const double d = baselines::ncd(io::read_bits(b_x), io::read_bits(b_y), z);
      emit(b_out, io::Csv{{"ncd", "compressor"}, {{num(d), z.describe()}}}.str());
    } else if (*b_mi) {
      emit(b_out, io::Csv{{"mi"}, {{num(baselines::mutual_information(io::read_bits(b_x), io::read_bits(b_y)))}}}.str());
    } else if (*b_rowscan) {
      const auto method = baselines::parse_row_method(b_method);
      std::optional<ctm::CtmTable> t;
      std::optional<bdm::Evaluator> ev;
      if (method == baselines::RowMethod::BdmDifference) {
        t = ctm::load_table_file(b_table.empty() ? default_table(ctm::Dim::One) : b_table);
        ev.emplace(*t, b_block > 1 ? b_block : left);
      }
      const auto scores = baselines::row_window_scan(io::read_grid(b_input), method,
                                                     baselines::RowScan{left, right, stride}, ev ? &*ev : nullptr);
      io::Csv c{{"row", "window", "score"}, {}};
      for (std::size_t r = 0; r < scores.size(); ++r)
        for (std::size_t w = 0; w < scores[r].size(); ++w)
          c.rows.push_back({std::to_string(r), std::to_string(w), num(scores[r][w])});
      emit(b_out, c.str());
    } else if (*exp_run) {
      auto cfg = experiments::load_manifest(config_file);
      if (!exp_out.empty()) cfg.out_dir = exp_out;
      if (exp_workers >= 0) cfg.workers = exp_workers;
      const auto res = experiments::run_experiment(cfg);
      for (const auto& [k, v] : res.summary) std::cout << k << ' ' << num(v) << '\n';
    } else if (*exp_list) {
      for (const auto& id : experiments::experiment_ids()) std::cout << id << '\n';
    } else if (*plot_cmd) {
      emit(p_out, plot::emit_plot(io::Csv::parse(io::read_text(p_input)), plot::parse_kind(p_kind), popt));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const TableError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
