#include <doctest.h>

#include "setcsp/oracle.hpp"
#include "setcsp/parser.hpp"

#include "helpers.hpp"

using namespace setcsp;
using namespace setcsp::testing;

TEST_CASE("pattern evaluation") {
  ClausalFormula f = clausal("x == 1");
  // Only the region inside x is nonempty.
  CHECK(eval_pattern(f, {1, 0b10}));
  // The region outside x is also nonempty.
  CHECK_FALSE(eval_pattern(f, {1, 0b11}));

  ClausalFormula taut = clausal("x == x");
  CHECK(taut.clauses.empty());
  for (uint64_t bits = 1; bits < 4; ++bits)
    CHECK(eval_pattern(ClausalFormula{{}, {"x"}}, {1, bits}));

  CHECK_THROWS_AS(eval_pattern(f, {2, 1}), Error);
  CHECK_THROWS_AS(eval_pattern(f, {1, 0}), Error);
}

TEST_CASE("satisfiability search") {
  // A proper two-class partition: x and y complementary and both proper.
  ClausalFormula part = clausal(
      "(~x | ~y == 1) and ((x|y) == 1) and (x != 1) and (y != 1)");
  auto b = oracle_sat(part);
  REQUIRE(b.has_value());
  // Exactly the regions x-minus-y and y-minus-x are nonempty.
  CHECK(b->bits == 0b0110);

  CHECK_FALSE(oracle_sat(clausal("x != x")).has_value());
  CHECK_FALSE(oracle_sat(clausal("(x == 1) and (x != 1)")).has_value());
}

TEST_CASE("cap is an explicit refusal") {
  ClausalFormula big = clausal("(x|y|z|w|p) == 1");
  CHECK(big.vars.size() == 5);
  CHECK_THROWS_AS(oracle_sat(big), CapError);
  // Raising the cap explicitly re-enables the search; this formula is
  // satisfied by the very first pattern, so the widened run stays cheap.
  OracleConfig wide{5};
  CHECK(oracle_sat(big, wide).has_value());
}

TEST_CASE("equivalence and entailment") {
  CHECK(oracle_equiv(clausal("~x | y == 1"), clausal("x & y == x")));
  ClausalFormula f = clausal("(x == y) or (y == z)");
  CHECK(oracle_equiv(f, f));
  CHECK_FALSE(oracle_equiv(clausal("(x|y) == 1"),
                           clausal("(x == 1) or (y == 1)")));
  CHECK(oracle_entails(clausal("x == 1", {"x", "y"}),
                       clausal("x | y == 1", {"x", "y"})));
  CHECK_FALSE(oracle_entails(clausal("x | y == 1", {"x", "y"}),
                             clausal("x == 1", {"x", "y"})));
  CHECK_THROWS_AS(oracle_equiv(clausal("x == 1"), clausal("y == 1")), Error);
}

TEST_CASE("entailment is reflexive and transitive on a small family") {
  std::vector<ClausalFormula> fam = {
      clausal("x == 1", {"x", "y", "z"}),
      clausal("x | y == 1", {"x", "y", "z"}),
      clausal("x | y | z == 1", {"x", "y", "z"}),
      clausal("~x | y == 1", {"x", "y", "z"}),
      clausal("x != 1", {"x", "y", "z"})};
  for (const auto& a : fam) CHECK(oracle_entails(a, a));
  for (const auto& a : fam)
    for (const auto& b : fam)
      for (const auto& c : fam)
        if (oracle_entails(a, b) && oracle_entails(b, c))
          CHECK(oracle_entails(a, c));
}

TEST_CASE("block model evaluation") {
  ClausalFormula sub = clausal("~x | y == 1");
  BlockModel m;
  m.blocks = 1;
  m.assignment = {{"x", {}}, {"y", {0}}};
  CHECK(eval_block_model(sub, m));

  ClausalFormula neq = clausal("x != y");
  CHECK(eval_block_model(neq, m));
  m.assignment["x"] = {0};
  CHECK_FALSE(eval_block_model(neq, m));

  BlockModel missing;
  missing.blocks = 1;
  missing.assignment = {{"x", {0}}};
  CHECK_THROWS_AS(eval_block_model(neq, missing), Error);
}

TEST_CASE("patterns convert to block models") {
  BlockModel a = pattern_to_block_model({1, 0b10}, {"x"});
  CHECK(a.blocks == 1);
  CHECK(a.assignment["x"] == std::vector<int>{0});

  BlockModel b = pattern_to_block_model({1, 0b01}, {"x"});
  CHECK(b.blocks == 1);
  CHECK(b.assignment["x"].empty());

  // Only the region x-minus-y nonempty.
  BlockModel c = pattern_to_block_model({2, 0b0010}, {"x", "y"});
  CHECK(c.blocks == 1);
  CHECK(c.assignment["x"] == std::vector<int>{0});
  CHECK(c.assignment["y"].empty());
}

TEST_CASE("pattern and block views agree on every small formula") {
  std::vector<ClausalFormula> fam = {
      clausal("(x == y) or (y == z)"), clausal("(x|y) == z"),
      clausal("(x & y != x) and (x != 1)", {"x", "y", "z"}),
      clausal("~x | ~y | z == 1"), clausal("x != 1", {"x", "y", "z"})};
  for (const auto& f : fam) {
    for (uint64_t bits = 1; bits < 256; ++bits) {
      MintermPattern b{3, bits};
      CHECK(eval_pattern(f, b) ==
            eval_block_model(f, pattern_to_block_model(b, f.vars)));
    }
  }
}

TEST_CASE("satisfiability agrees with direct two-point enumeration") {
  std::vector<ClausalFormula> fam = {
      clausal("(x == y) or (x != 1)", {"x", "y"}),
      clausal("(x|y) == 1"), clausal("x != y"),
      clausal("(x != 1) and (x | y == 1) and (y != 1)"),
      clausal("(x == 1) and (x != 1)", {"x", "y"})};
  for (const auto& f : fam) {
    bool direct = false;
    for (uint64_t x = 0; x < 4 && !direct; ++x)
      for (uint64_t y = 0; y < 4 && !direct; ++y)
        direct = eval_masks(f, {x, y}, 2);
    // Agreement is on satisfiability only; two points are enough to
    // separate these particular formulas.
    CHECK(direct == oracle_sat(f).has_value());
  }
}

TEST_CASE("point-wise brute force") {
  CspInstance neq = parse_instance("rel Neq(x,y) := x != y\nNeq(t, f)\n");
  auto m = brute_force_points(neq, 1);
  REQUIRE(m.has_value());
  CHECK(m->blocks == 1);
  CHECK(m->assignment["t"] == std::vector<int>{0});
  CHECK(m->assignment["f"].empty());

  CspInstance contradiction = parse_instance(
      "rel E(x) := x == 1\nrel N(x) := x != 1\nE(a)\nN(a)\n");
  CHECK_FALSE(brute_force_points(contradiction, 1).has_value());
}
