#include "algodecon/ca.hpp"
#include "algodecon/error.hpp"
#include "support.hpp"

using namespace algodecon;
using namespace algodecon::ca;

namespace {

std::string row_string(const Grid& g, std::size_t r) {
  std::string s;
  for (std::size_t c = 0; c < g.cols(); ++c) s += static_cast<char>('0' + g(r, c));
  return s;
}

// Rule 90 from a single cell: row t, offset k from the centre is
// C(t, (t + k) / 2) mod 2 when t + k is even, which is 1 iff
// ((t + k) / 2) & ~t == 0 (Lucas).
std::uint8_t rule90_oracle(int t, int k) {
  if (std::abs(k) > t || (t + k) % 2) return 0;
  const int j = (t + k) / 2;
  return (j & ~t) == 0;
}

}  // namespace

TEST_CASE("elementary rules", "[ca]") {
  const auto single = single_cell_row(9);
  CHECK(row_string(eca_evolve(EcaRule(0), single, 1), 1) == "000000000");
  CHECK(row_string(eca_evolve(EcaRule(255), single, 1), 1) == "111111111");
  // rule 110: 100 -> 0, 010 -> 1, 001 -> 1
  CHECK(row_string(eca_evolve(EcaRule(110), single, 1), 1) == "000110000");
  CHECK(row_string(eca_evolve(EcaRule(110), single, 2), 2) == "001110000");
  // rule 30 from one cell
  CHECK(row_string(eca_evolve(EcaRule(30), single, 2), 2) == "001100100");
  const auto g = eca_evolve(EcaRule(30), single, 4);
  CHECK(g.rows() == 5);
  CHECK(row_string(g, 0) == "000010000");
  CHECK_THROWS_AS(EcaRule(256), UsageError);
}

TEST_CASE("rule 90 is Pascal's triangle mod 2", "[ca]") {
  const int w = 129, steps = 60;
  const auto g = eca_evolve(EcaRule(90), single_cell_row(w), steps);
  for (int t = 0; t <= steps; ++t)
    for (int c = 0; c < w; ++c) CHECK(g(t, c) == rule90_oracle(t, c - w / 2));
}

TEST_CASE("rows wrap around", "[ca]") {
  Row r(7, 0);
  r[0] = 1;
  // rule 2 copies the right neighbour: 001 -> 1
  CHECK(eca_step(EcaRule(2), r) == Row{0, 0, 0, 0, 0, 0, 1});
}

TEST_CASE("interaction rule indices", "[ca]") {
  CHECK(mixed_neighbourhoods().size() == 12);
  for (const auto& n : mixed_neighbourhoods()) {
    bool a = false, b = false;
    for (auto v : n) a |= v < 0, b |= v > 0;
    CHECK((a && b));
  }
  const InteractionRule first(1);
  for (auto v : first.outputs()) CHECK(v == -1);
  const InteractionRule second(2);
  CHECK(second.outputs()[11] == 0);
  for (int i = 0; i < 11; ++i) CHECK(second.outputs()[i] == -1);
  const InteractionRule last(kInteractionRules);
  for (auto v : last.outputs()) CHECK(v == 1);
  CHECK_THROWS_AS(InteractionRule(0), UsageError);
  CHECK_THROWS_AS(InteractionRule(kInteractionRules + 1), UsageError);
  CHECK_THROWS_AS(first(Neighbourhood{1, 0, 1}), UsageError);
}

TEST_CASE("single-colour rows evolve as the plain rules", "[ca][property]") {
  Interaction in;
  in.rule_a = EcaRule(30);
  in.rule_b = EcaRule(110);
  const auto bits = random_row(31, 4);
  StateRow neg(31), pos(31);
  for (std::size_t i = 0; i < 31; ++i) {
    neg[i] = bits[i] ? -1 : 0;
    pos[i] = bits[i] ? 1 : 0;
  }
  const auto ga = interacting_evolve(in, neg, 20);
  const auto gb = interacting_evolve(in, pos, 20);
  CHECK(ga.projection() == eca_evolve(EcaRule(30), bits, 20));
  CHECK(gb.projection() == eca_evolve(EcaRule(110), bits, 20));
  for (auto v : ga.cells()) CHECK(v <= 0);
  for (auto v : gb.cells()) CHECK(v >= 0);
}

TEST_CASE("projection and masks agree with the state grid", "[ca][property]") {
  const auto sg = interacting_evolve(Interaction{}, split_random_init(30, 8), 25);
  const auto p = sg.projection();
  const auto a = sg.mask(-1), b = sg.mask(1);
  for (std::size_t i = 0; i < sg.cells().size(); ++i) {
    CHECK(p.cells()[i] == (sg.cells()[i] != 0));
    CHECK(a.cells()[i] == (sg.cells()[i] == -1));
    CHECK(b.cells()[i] == (sg.cells()[i] == 1));
  }
  CHECK(StateGrid::from_rows(sg.to_rows()) == sg);
}

TEST_CASE("the all-white neighbourhood", "[ca]") {
  Interaction in;
  in.rule_a = EcaRule(1);  // 000 -> 1
  in.rule_b = EcaRule(110);
  const StateRow white(5, 0);
  CHECK_THROWS_AS(interacting_step(in, white), UsageError);
  in.zero_owner = ZeroOwner::A;
  CHECK(interacting_step(in, white) == StateRow(5, -1));
  in.zero_owner = ZeroOwner::B;
  CHECK(interacting_step(in, white) == StateRow(5, 0));
  in.zero_owner = ZeroOwner::White;
  CHECK(interacting_step(in, white) == StateRow(5, 0));
  CHECK(parse_zero_owner("B") == ZeroOwner::B);
  CHECK_THROWS_AS(parse_zero_owner("x"), UsageError);
}

TEST_CASE("random interaction mode is a pure function of its seed", "[ca][property]") {
  Interaction in;
  in.table.reset();
  in.random_seed = 17;
  const auto init = split_random_init(40, 3);
  const auto g1 = interacting_evolve(in, init, 30);
  CHECK(interacting_evolve(in, init, 30) == g1);
  in.random_seed = 18;
  CHECK(!(interacting_evolve(in, init, 30) == g1));
  for (int t = 0; t < 5; ++t) {
    const auto v = random_state(1, t, 2);
    CHECK((v >= -1 && v <= 1));
    CHECK(random_state(1, t, 2) == v);
  }
}

TEST_CASE("split initial rows", "[ca]") {
  const auto row = split_random_init(20, 6);
  CHECK(row == split_random_init(20, 6));
  for (std::size_t i = 0; i < 20; ++i) {
    if (i < 10) CHECK(row[i] <= 0);
    else CHECK(row[i] >= 0);
  }
  CHECK_THROWS_AS(split_random_init(2, 0), UsageError);
}
