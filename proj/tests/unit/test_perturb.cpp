#include <algorithm>
#include <cmath>
#include <random>

#include "algodecon/bdm.hpp"
#include "algodecon/ca.hpp"
#include "algodecon/graph.hpp"
#include "algodecon/perturb.hpp"
#include "support.hpp"

using namespace algodecon;
using Catch::Approx;

namespace {

// Full recomputation of C(g) - C(g \ e) for every edge.
std::vector<double> oracle_contributions(const graphs::Graph& g, const bdm::Evaluator& ev) {
  const double base = ev.bdm(g.adjacency()).bits;
  std::vector<double> out;
  for (const auto& e : g.edges()) {
    auto h = g;
    h.remove_edge(e.u, e.v);
    out.push_back(base - ev.bdm(h.adjacency()).bits);
  }
  return out;
}

std::vector<double> sorted_values(const perturb::InformationSignature& s) {
  auto v = s.values();
  std::sort(v.begin(), v.end());
  return v;
}

graphs::Graph two_k5(int a, int b) {
  auto g = graphs::compose({graphs::gen_complete(5), graphs::gen_complete(5)}, 0, 0);
  g.add_edge(a, b);
  return g;
}

}  // namespace

TEST_CASE("edge contributions match full recomputation", "[perturb]") {
  REQUIRE_TABLE_2D();
  for (int d : {3, 4}) {
    const bdm::Evaluator ev(table2d, d);
    for (const auto& g : {graphs::gen_complete(4), two_k5(0, 8), graphs::gen_er(12, 0.4, 3), graphs::gen_ba(15, 2, 1)}) {
      auto want = oracle_contributions(g, ev);
      std::size_t i = 0;
      for (const auto& e : g.edges()) CHECK(perturb::edge_contribution(g, e, ev) == Approx(want[i++]).margin(1e-9));
      std::sort(want.begin(), want.end());
      const auto got = sorted_values(perturb::signature(g, ev));
      REQUIRE(got.size() == want.size());
      for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k] == Approx(want[k]).margin(1e-9));
    }
  }
}

TEST_CASE("signature is sorted descending with ties by edge", "[perturb][property]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 4);
  const auto g = graphs::compose({graphs::gen_star(10), graphs::gen_complete(10)}, 2, 4);
  const auto s = perturb::signature(g, ev);
  REQUIRE(s.entries.size() == g.edge_count());
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    const auto& a = s.entries[i - 1];
    const auto& b = s.entries[i];
    CHECK(a.bits >= b.bits);
    if (a.bits == b.bits) CHECK(a.edge < b.edge);
  }
  // determinism, including tie order
  const auto again = perturb::signature(g, ev);
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    CHECK(again.entries[i].edge == s.entries[i].edge);
    CHECK(again.entries[i].bits == s.entries[i].bits);
  }
}

TEST_CASE("evaluation order does not change the contribution multiset", "[perturb][property]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 4);
  const auto g = graphs::gen_er(16, 0.5, 9);
  std::vector<graphs::Edge> edges(g.edges().begin(), g.edges().end());
  std::shuffle(edges.begin(), edges.end(), std::mt19937_64(1));
  std::vector<double> shuffled;
  for (const auto& e : edges) shuffled.push_back(perturb::edge_contribution(g, e, ev));
  std::sort(shuffled.begin(), shuffled.end());
  CHECK(shuffled == sorted_values(perturb::signature(g, ev)));
}

TEST_CASE("K4 has a flat signature", "[perturb]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 4);
  const auto want = oracle_contributions(graphs::gen_complete(4), ev);
  const auto s = perturb::signature(graphs::gen_complete(4), ev);
  REQUIRE(s.entries.size() == 6);
  for (const auto& e : s.entries) CHECK(e.bits == Approx(want.front()).margin(1e-9));
}

TEST_CASE("K8 edges related by block translation contribute equally", "[perturb]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 4);
  const auto g = graphs::gen_complete(8);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(perturb::edge_contribution(g, {i, j}, ev) == perturb::edge_contribution(g, {i + 4, j + 4}, ev));
}

TEST_CASE("deleting an edge inside an all-ones block changes two block terms", "[perturb]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 4);
  // Edge 0-5 sits in the two off-diagonal all-ones 4x4 blocks of K8.
  auto value = [&](const std::string& cells) {
    return ev.bdm(Grid::from_rows({cells.substr(0, 4), cells.substr(4, 4), cells.substr(8, 4), cells.substr(12, 4)})).bits;
  };
  const double ones = value("1111111111111111");
  const double upper = value("1011111111111111");  // row 0, column 5 -> (0, 1) inside the block
  const double lower = value("1111011111111111");  // transpose: (1, 0)
  const double expected = (ones + 1.0) - (upper + lower);
  CHECK(perturb::edge_contribution(graphs::gen_complete(8), {0, 5}, ev) == Approx(expected).margin(1e-9));
}

TEST_CASE("a single edge contributes base minus the empty graph", "[perturb]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 3);
  graphs::Graph g(6);
  g.add_edge(1, 4);
  const auto s = perturb::signature(g, ev);
  REQUIRE(s.entries.size() == 1);
  CHECK(s.entries[0].bits == Approx(ev.bdm(g.adjacency()).bits - ev.bdm(graphs::Graph(6).adjacency()).bits));
  CHECK(s.base_bits == Approx(ev.bdm(g.adjacency()).bits));
}

TEST_CASE("a bridge between two K5s differs from internal edges", "[perturb]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 4);
  const auto g = two_k5(0, 8);
  const auto want = oracle_contributions(g, ev);
  std::size_t i = 0;
  double bridge = 0;
  std::vector<double> internal;
  for (const auto& e : g.edges()) {
    if (e == graphs::Edge{0, 8}) bridge = want[i];
    else internal.push_back(want[i]);
    ++i;
  }
  for (double v : internal) CHECK(v != Approx(bridge).margin(1e-9));
}

TEST_CASE("all-zero grid footprint is one class and repeats per block position", "[perturb]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 3);
  const auto fp = perturb::grid_footprint(Grid(12, 12), ev);
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 12; ++c) CHECK(fp.contribution[r * 12 + c] == fp.contribution[(r % 3) * 12 + c % 3]);
  for (auto k : fp.classes) CHECK(k == fp.classes.front());
}

TEST_CASE("grid flips: antisymmetry and involution", "[perturb][property]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 3);
  std::mt19937_64 rng(21);
  Grid g(9, 10);
  for (auto& c : g.cells()) c = rng() & 1U;
  const auto fp = perturb::grid_footprint(g, ev);
  CHECK(fp.base_bits == Approx(ev.bdm(g).bits));
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t c = rng() % g.size();
    auto h = g;
    h.cells()[c] ^= 1U;
    const auto fh = perturb::grid_footprint(h, ev);
    CHECK(fh.contribution[c] == Approx(-fp.contribution[c]).margin(1e-9));
    CHECK(fp.contribution[c] == Approx(ev.bdm(g).bits - ev.bdm(h).bits).margin(1e-9));
    h.cells()[c] ^= 1U;
    CHECK(ev.bdm(h).bits == fp.base_bits);
  }
}

TEST_CASE("footprint classes follow tau", "[perturb]") {
  using perturb::CellClass;
  CHECK(perturb::classify(0.2, 0.5) == CellClass::Neutral);
  CHECK(perturb::classify(-0.5, 0.5) == CellClass::Neutral);
  CHECK(perturb::classify(0.6, 0.5) == CellClass::Positive);
  CHECK(perturb::classify(-0.6, 0.5) == CellClass::Negative);
  // population sd of {1, 3} is 1
  CHECK(perturb::default_tau({1.0, 3.0}) == Approx(0.5));
}

TEST_CASE("the two automata of a 255|110 interaction leave different footprints", "[perturb]") {
  REQUIRE_TABLE_2D();
  const bdm::Evaluator ev(table2d, 3);
  ca::Interaction in;
  in.rule_a = ca::EcaRule(255);
  in.rule_b = ca::EcaRule(110);
  in.zero_owner = ca::ZeroOwner::B;
  const auto sg = ca::interacting_evolve(in, ca::split_random_init(60, 1), 59);
  const auto fp = perturb::grid_footprint(sg.projection(), ev);
  double a = 0, b = 0;
  int na = 0, nb = 0;
  for (std::size_t c = 0; c < fp.contribution.size(); ++c) {
    if (sg.cells()[c] < 0) a += fp.contribution[c], ++na;
    if (sg.cells()[c] > 0) b += fp.contribution[c], ++nb;
  }
  REQUIRE(na > 0);
  REQUIRE(nb > 0);
  CHECK(a / na != Approx(b / nb).margin(0.1));
}

TEST_CASE("string footprints", "[perturb]") {
  const auto& t = support::table_3_1d();

  SECTION("01 repeated is uniform with even blocks") {
    const bdm::Evaluator ev(t, 2);
    std::string s;
    for (int i = 0; i < 26; ++i) s += "01";
    const auto fp = perturb::string_footprint(parse_bits(s), ev, perturb::EditMode::Flip);
    for (double v : fp.contribution) CHECK(v == Approx(fp.contribution.front()).margin(1e-12));
  }

  SECTION("repeated blocks repeat their contributions") {
    const bdm::Evaluator ev(t, 5);
    std::string s;
    for (int i = 0; i < 6; ++i) s += "11010";
    const auto fp = perturb::string_footprint(parse_bits(s), ev, perturb::EditMode::Flip);
    for (std::size_t i = 5; i < fp.contribution.size(); ++i) CHECK(fp.contribution[i] == fp.contribution[i % 5]);
  }

  SECTION("reversal reverses the flip footprint") {
    const bdm::Evaluator ev(t, 5);
    const auto s = parse_bits(
        "0101010101010101010101010101010101010101010101010101"
        "110100101010100000001001100111100110000011100110");
    const BitString r(s.rbegin(), s.rend());
    const auto fs = perturb::string_footprint(s, ev, perturb::EditMode::Flip);
    const auto fr = perturb::string_footprint(r, ev, perturb::EditMode::Flip);
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(fr.contribution[i] == Approx(fs.contribution[s.size() - 1 - i]).margin(1e-9));
  }

  SECTION("deletions from a constant string are all alike") {
    const bdm::Evaluator ev(t, 5);
    const auto fp = perturb::string_footprint(parse_bits(std::string(20, '1')), ev, perturb::EditMode::Delete);
    for (double v : fp.contribution) CHECK(v == fp.contribution.front());
  }

  SECTION("locality bound") {
    const bdm::Evaluator ev(t, 5);
    std::mt19937_64 rng(5);
    BitString s(80);
    for (auto& b : s) b = rng() & 1U;
    const auto fp = perturb::string_footprint(s, ev, perturb::EditMode::Flip);
    const double per_block = t.max_bits() + 5.0;
    for (double v : fp.contribution) CHECK(std::abs(v) <= 2 * per_block + std::log2(16.0));
  }
}
