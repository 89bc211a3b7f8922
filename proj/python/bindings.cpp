#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "algodecon/baselines.hpp"
#include "algodecon/bdm.hpp"
#include "algodecon/ca.hpp"
#include "algodecon/ctm.hpp"
#include "algodecon/deconvolve.hpp"
#include "algodecon/error.hpp"
#include "algodecon/experiments.hpp"
#include "algodecon/graph.hpp"
#include "algodecon/perturb.hpp"

namespace py = pybind11;
using namespace algodecon;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

graphs::Graph make_graph(int nodes, const EdgeList& edges) {
  graphs::Graph g(nodes);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) throw DataError("bad edge");
    g.add_edge(a, b);
  }
  return g;
}

EdgeList edge_list(const std::vector<graphs::Edge>& edges) {
  EdgeList out;
  for (const auto& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

py::dict estimate(const bdm::ComplexityEstimate& e) {
  py::dict d;
  d["bits"] = e.bits;
  d["method"] = bdm::method_name(e.method);
  d["coverage"] = e.coverage;
  return d;
}

py::dict graph_result(const deconvolve::GraphDeconvolution& r) {
  py::dict d;
  d["components"] = r.components;
  d["removed"] = edge_list(r.removed_edges());
  d["iterations"] = r.iterations;
  d["evaluations"] = r.evaluations;
  d["epsilon"] = r.epsilon;
  d["breaks"] = r.breaks;
  return d;
}

ctm::Dim to_dim(int d) {
  if (d != 1 && d != 2) throw UsageError("dim must be 1 or 2");
  return d == 1 ? ctm::Dim::One : ctm::Dim::Two;
}

}  // namespace

PYBIND11_MODULE(algodecon, m) {
  m.doc() = "Algorithmic-information causal deconvolution (CTM, BDM, perturbation analysis)";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<TableError>(m, "TableError", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  py::class_<ctm::CtmTable>(m, "CtmTable")
      .def_property_readonly("states", [](const ctm::CtmTable& t) { return t.machine_class().states; })
      .def_property_readonly("dim", [](const ctm::CtmTable& t) { return t.machine_class().dim == ctm::Dim::One ? 1 : 2; })
      .def_property_readonly("cutoff", &ctm::CtmTable::cutoff)
      .def_property_readonly("total_runs", &ctm::CtmTable::total_runs)
      .def_property_readonly("halted_runs", &ctm::CtmTable::halted_runs)
      .def_property_readonly("external", &ctm::CtmTable::external)
      .def_property_readonly("checksum", [](const ctm::CtmTable& t) { return ctm::table_checksum(t); })
      .def("__len__", [](const ctm::CtmTable& t) { return t.counts().size(); })
      .def("count", [](const ctm::CtmTable& t, const std::string& k) { return t.count(k); })
      .def("ctm_bits", [](const ctm::CtmTable& t, const std::string& k) { return t.ctm_bits(k); })
      .def("max_bits", &ctm::CtmTable::max_bits)
      .def("save", [](const ctm::CtmTable& t, const std::string& path) { ctm::save_table_file(t, path); });

  m.def("class_size", [](int states, int dim) { return ctm::class_size({states, 2, to_dim(dim)}); },
        py::arg("states"), py::arg("dim") = 1);
  m.def(
      "build_table",
      [](int states, int dim, std::uint64_t cutoff, unsigned workers) {
        const ctm::MachineClass cls{states, 2, to_dim(dim)};
        py::gil_scoped_release release;
        return ctm::build_table(cls, cutoff ? cutoff : ctm::default_cutoff(cls), workers);
      },
      py::arg("states"), py::arg("dim") = 1, py::arg("cutoff") = 0, py::arg("workers") = 1);
  m.def("load_table", &ctm::load_table_file, py::arg("path"));

  py::class_<bdm::Evaluator>(m, "Evaluator")
      .def(py::init<const ctm::CtmTable&, int>(), py::arg("table"), py::arg("block_size"))
      .def_property_readonly("block_size", &bdm::Evaluator::block_size)
      .def("string", [](const bdm::Evaluator& ev, const std::string& s) { return estimate(ev.bdm(parse_bits(s))); })
      .def("grid",
           [](const bdm::Evaluator& ev, const std::vector<std::string>& rows) { return estimate(ev.bdm(Grid::from_rows(rows))); })
      .def("graph", [](const bdm::Evaluator& ev, int nodes, const EdgeList& edges) {
        return estimate(ev.bdm(make_graph(nodes, edges).adjacency()));
      });

  m.def(
      "signature",
      [](const bdm::Evaluator& ev, int nodes, const EdgeList& edges) {
        const auto s = perturb::signature(make_graph(nodes, edges), ev);
        std::vector<std::tuple<int, int, double>> out;
        for (const auto& e : s.entries) out.emplace_back(e.edge.u, e.edge.v, e.bits);
        return out;
      },
      py::arg("evaluator"), py::arg("nodes"), py::arg("edges"));
  m.def(
      "string_footprint",
      [](const bdm::Evaluator& ev, const std::string& s, const std::string& mode) {
        if (mode != "flip" && mode != "delete") throw UsageError("mode must be flip or delete");
        return perturb::string_footprint(parse_bits(s), ev, mode == "flip" ? perturb::EditMode::Flip : perturb::EditMode::Delete)
            .contribution;
      },
      py::arg("evaluator"), py::arg("bits"), py::arg("mode") = "flip");
  m.def(
      "grid_footprint",
      [](const bdm::Evaluator& ev, const std::vector<std::string>& rows) {
        return perturb::grid_footprint(Grid::from_rows(rows), ev).contribution;
      },
      py::arg("evaluator"), py::arg("rows"));

  m.def(
      "deconvolve_n",
      [](const bdm::Evaluator& ev, int nodes, const EdgeList& edges, int n, const std::string& policy) {
        return graph_result(deconvolve::deconvolve_n(make_graph(nodes, edges), n, ev, deconvolve::parse_policy(policy)));
      },
      py::arg("evaluator"), py::arg("nodes"), py::arg("edges"), py::arg("n"), py::arg("policy") = "literal");
  m.def(
      "deconvolve_auto",
      [](const bdm::Evaluator& ev, int nodes, const EdgeList& edges, std::optional<double> epsilon) {
        deconvolve::EpsilonPolicy p;
        if (epsilon) {
          p.estimation = deconvolve::EpsilonPolicy::Estimation::Fixed;
          p.epsilon = *epsilon;
        }
        return graph_result(deconvolve::deconvolve_auto(make_graph(nodes, edges), p, ev));
      },
      py::arg("evaluator"), py::arg("nodes"), py::arg("edges"), py::arg("epsilon") = py::none());
  m.def(
      "deconvolve_string",
      [](const bdm::Evaluator& ev, const std::string& s) {
        const auto r = deconvolve::deconvolve_string(parse_bits(s), ev);
        py::dict d;
        d["boundaries"] = r.boundaries;
        d["segments"] = r.segments;
        d["epsilon"] = r.epsilon;
        return d;
      },
      py::arg("evaluator"), py::arg("bits"));

  m.def(
      "eca_evolve",
      [](int rule, int width, int steps, std::optional<std::uint64_t> seed) {
        const auto init = seed ? ca::random_row(width, *seed) : ca::single_cell_row(width);
        return ca::eca_evolve(ca::EcaRule(rule), init, steps).to_rows();
      },
      py::arg("rule"), py::arg("width"), py::arg("steps"), py::arg("seed") = py::none());

  m.def(
      "compose",
      [](const std::vector<std::string>& parts, int connectors, std::uint64_t seed) {
        std::vector<graphs::Graph> gs;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          const auto& p = parts[i];
          const auto colon = p.find(':');
          const std::string fam = p.substr(0, colon);
          const int n = colon == std::string::npos ? 0 : std::stoi(p.substr(colon + 1));
          const auto part_seed = seed * 1000 + i + 1;
          if (fam == "complete") gs.push_back(graphs::gen_complete(n));
          else if (fam == "star") gs.push_back(graphs::gen_star(n));
          else if (fam == "cycle") gs.push_back(graphs::gen_cycle(n));
          else if (fam == "ba") gs.push_back(graphs::gen_ba(n, 2, part_seed));
          else if (fam == "er") gs.push_back(graphs::gen_er(n, 0.5, part_seed));
          else throw UsageError("part must be complete:N, star:N, cycle:N, ba:N or er:N");
        }
        const auto g = graphs::compose(gs, connectors, seed);
        py::dict d;
        d["nodes"] = g.node_count();
        d["edges"] = edge_list({g.edges().begin(), g.edges().end()});
        d["labels"] = g.node_labels();
        return d;
      },
      py::arg("parts"), py::arg("connectors") = 1, py::arg("seed") = 0);

  m.def("ncd", [](const std::string& x, const std::string& y) { return baselines::ncd(parse_bits(x), parse_bits(y)); });
  m.def("shannon_entropy", [](const std::string& s, int block) { return baselines::shannon_entropy(parse_bits(s), block); },
        py::arg("bits"), py::arg("block_size") = 1);

  m.def("experiment_ids", &experiments::experiment_ids);
  m.def(
      "run_experiment",
      [](const std::map<std::string, std::string>& config) {
        const auto cfg = experiments::ExperimentConfig::from_key_values(config);
        py::gil_scoped_release release;
        return experiments::run_experiment(cfg).summary;
      },
      py::arg("config"));
}
