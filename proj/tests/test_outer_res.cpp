#include <doctest.h>

#include <random>

#include "setcsp/outer_res.hpp"
#include "setcsp/parser.hpp"

#include "helpers.hpp"

using namespace setcsp;
using namespace setcsp::testing;

TEST_CASE("two-level resolution on hand-sized inputs") {
  // x below y, y below x, but x and y distinct: both inner clauses of the
  // disequality term fall to entailment, the literal empties, and the
  // emptied outer clause rejects.
  ClausalFormula cyc =
      clausal("(~x | y == 1) and (~y | x == 1) and (x != y)");
  SolveOutcome r = outer_res(cyc);
  CHECK_FALSE(r.sat);
  REQUIRE_FALSE(r.trace.empty());
  CHECK(r.trace.back().kind == TraceEvent::Kind::EmptyClause);

  // Drop one containment and the disequality survives with y strictly above.
  ClausalFormula half = clausal("(~x | y == 1) and (x != y)");
  SolveOutcome s = outer_res(half);
  REQUIRE(s.sat);
  CHECK(s.model.blocks == 1);
  CHECK(s.model.assignment["x"].empty());
  CHECK(s.model.assignment["y"] == std::vector<int>{0});

  ClausalFormula meet = clausal(
      "(~x | ~y | z == 1) and (x == 1) and (y == 1) and (z != 1)");
  CHECK_FALSE(outer_res(meet).sat);

  SolveOutcome empty = outer_res(ClausalFormula{{}, {"a", "b"}});
  REQUIRE(empty.sat);
  CHECK(empty.model.blocks == 1);
  CHECK(empty.model.assignment["a"].empty());
  CHECK(empty.model.assignment["b"].empty());
}

TEST_CASE("non-Horn-Horn input is refused, not misanswered") {
  CHECK_THROWS_AS(outer_res(clausal("(x|y) == 1")), NotHornHorn);
  CHECK_THROWS_AS(outer_res(clausal("(x == 1) or (y == 1)")), NotHornHorn);
}

TEST_CASE("accepting models verify; rejecting traces replay") {
  std::vector<std::string> family = {
      "(~x | y == 1) and (~y | x == 1) and (x != y)",
      "(~x | y == 1) and (x != y)",
      "(~x | ~y | z == 1) and (x == 1) and (y == 1) and (z != 1)",
      "(x != 1) and (~x | y == 1)",
      "(x == 1) and (x != 1)",
      "((x|y) != 1) and (x == 1)",
      "((x|y) != 1) and (x == 1) and (y == 1)"};
  for (const auto& text : family) {
    ClausalFormula f = clausal(text);
    SolveOutcome r = outer_res(f);
    if (r.sat) {
      CHECK(eval_block_model(f, r.model));
    } else {
      CHECK(replay_trace(f, r.trace));
      // A truncated trace no longer ends in a rejection and must not verify.
      auto cut = r.trace;
      cut.pop_back();
      CHECK_FALSE(replay_trace(f, cut));
    }
  }
}

TEST_CASE("tampered traces are rejected") {
  ClausalFormula f =
      clausal("(~x | y == 1) and (~y | x == 1) and (x != y)");
  SolveOutcome r = outer_res(f);
  REQUIRE_FALSE(r.sat);
  auto bad = r.trace;
  for (auto& e : bad) e.clause = 99;
  CHECK_FALSE(replay_trace(f, bad));
  CHECK_FALSE(replay_trace(f, {}));
}

TEST_CASE("verdicts match the oracle on random Horn-Horn formulas") {
  std::mt19937 rng(11);
  auto horn = horn_clauses(3);
  for (int round = 0; round < 400; ++round) {
    ClausalFormula f;
    f.vars = var_names(3);
    int nclauses = 1 + rng() % 3;
    for (int c = 0; c < nclauses; ++c) {
      OuterClause oc;
      int lits = 1 + rng() % 2;
      bool used_pos = false;
      for (int l = 0; l < lits; ++l) {
        bool pos = !used_pos && rng() % 2 == 0;
        used_pos = used_pos || pos;
        Term t;
        int inner = 1 + rng() % 2;
        for (int i = 0; i < inner; ++i) {
          const InnerClause& cand = horn[rng() % horn.size()];
          if (pos && cand.empty()) {
            t.push_back({{static_cast<int>(rng() % 3), false}});
          } else {
            t.push_back(cand);
          }
        }
        oc.push_back({t, pos});
      }
      f.clauses.push_back(oc);
    }
    f = normalize_clause_set(f);
    if (!classify_horn(f).horn_horn) continue;
    SolveOutcome r = outer_res(f);
    CHECK(r.sat == oracle_sat(f).has_value());
    if (r.sat) CHECK(eval_block_model(f, r.model));
  }
}

TEST_CASE("instance solving goes through templates") {
  std::vector<RelationDef> defs = {
      rel("S", {"x", "y"}, "~x | y == 1"),
      rel("Neq", {"x", "y"}, "((~x|y) & (~y|x)) != 1")};
  LanguageTemplates t = make_raw_templates(defs);
  CHECK(t.raw);
  CHECK(t.by_relation.count("S") == 1);

  CspInstance sat = parse_instance("rel S(x,y) := ~x | y == 1\nS(a,b)\n");
  CHECK(solve_instance(sat, t).sat);

  CspInstance unsat = parse_instance(
      "rel S(x,y) := ~x | y == 1\n"
      "rel Neq(x,y) := ((~x|y) & (~y|x)) != 1\n"
      "S(a,b)\nS(b,a)\nNeq(a,b)\n");
  CHECK_FALSE(solve_instance(unsat, t).sat);

  CspInstance none = parse_instance("rel S(x,y) := ~x | y == 1\nvar a b\n");
  SolveOutcome trivial = solve_instance(none, t);
  CHECK(trivial.sat);
  CHECK(trivial.model.assignment.size() == 2);

  CspInstance missing = parse_instance("rel T(x) := x == 1\nT(a)\n");
  CHECK_THROWS_AS(solve_instance(missing, t), MissingTemplate);

  CHECK_THROWS_AS(make_raw_templates({rel("Un", {"x", "y"}, "(x|y) == 1")}),
                  NotHornHorn);
}
