#include "setcsp/gadget.hpp"

#include <algorithm>
#include <cstdlib>

namespace setcsp {

std::vector<RelationDef> builtin_gadget_relations() {
  std::vector<RelationDef> out;
  RelationDef u;
  u.name = "U";
  u.params = {"x", "y", "z"};
  u.body = fatom(tjoin({tvar("x"), tvar("y")}), tvar("z"));
  u.builtin = true;
  out.push_back(std::move(u));
  RelationDef i;
  i.name = "I";
  i.params = {"x", "y", "z"};
  i.body = fatom(tmeet({tvar("x"), tvar("y")}), tvar("z"));
  i.builtin = true;
  out.push_back(std::move(i));
  RelationDef neq;
  neq.name = "Neq";
  neq.params = {"x", "y"};
  neq.body = fatom(tvar("x"), tvar("y"), false);
  neq.builtin = true;
  out.push_back(std::move(neq));
  return out;
}

bool eval_3sat(const ThreeSat& cnf, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) < cnf.num_vars)
    throw Error("assignment misses variables");
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (int lit : clause) {
      bool val = assignment[std::abs(lit) - 1];
      if ((lit > 0) == val) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

GadgetInstance gadget_from_3sat(const ThreeSat& cnf) {
  GadgetInstance g;
  g.instance.defs = builtin_gadget_relations();
  auto add_var = [&](const std::string& name) -> VarId {
    g.instance.vars.push_back(name);
    return static_cast<VarId>(g.instance.vars.size() - 1);
  };
  g.t = add_var("t");
  g.f = add_var("f");
  for (int i = 1; i <= cnf.num_vars; ++i) {
    VarId xt = add_var("x" + std::to_string(i) + "_t");
    VarId xf = add_var("x" + std::to_string(i) + "_f");
    g.var_pair.push_back({xt, xf});
  }
  for (size_t c = 0; c < cnf.clauses.size(); ++c)
    g.clause_var.push_back(add_var("u" + std::to_string(c + 1)));

  auto add = [&](const std::string& rel, std::vector<VarId> args) {
    g.instance.constraints.push_back({rel, std::move(args), {}});
  };
  for (int i = 0; i < cnf.num_vars; ++i) {
    add("U", {g.var_pair[i][0], g.var_pair[i][1], g.t});
    add("I", {g.var_pair[i][0], g.var_pair[i][1], g.f});
  }
  auto lit_var = [&](int lit) {
    return g.var_pair[std::abs(lit) - 1][lit > 0 ? 0 : 1];
  };
  for (size_t c = 0; c < cnf.clauses.size(); ++c) {
    const auto& cl = cnf.clauses[c];
    add("U", {lit_var(cl[0]), lit_var(cl[1]), g.clause_var[c]});
    add("U", {g.clause_var[c], lit_var(cl[2]), g.t});
  }
  add("Neq", {g.t, g.f});
  add("I", {g.t, g.f, g.f});
  return g;
}

BlockModel lift_boolean_model(const ThreeSat& cnf, const GadgetInstance& g,
                              const std::vector<bool>& assignment) {
  if (!eval_3sat(cnf, assignment))
    throw Error("assignment does not satisfy the 3SAT instance");
  auto name = [&](VarId v) { return g.instance.vars[v]; };
  BlockModel m;
  m.blocks = 1;
  m.assignment[name(g.t)] = {0};
  m.assignment[name(g.f)] = {};
  for (int i = 0; i < cnf.num_vars; ++i) {
    m.assignment[name(g.var_pair[i][0])] =
        assignment[i] ? std::vector<int>{0} : std::vector<int>{};
    m.assignment[name(g.var_pair[i][1])] =
        assignment[i] ? std::vector<int>{} : std::vector<int>{0};
  }
  auto lit_true = [&](int lit) {
    return (lit > 0) == static_cast<bool>(assignment[std::abs(lit) - 1]);
  };
  for (size_t c = 0; c < cnf.clauses.size(); ++c) {
    bool head = lit_true(cnf.clauses[c][0]) || lit_true(cnf.clauses[c][1]);
    m.assignment[name(g.clause_var[c])] =
        head ? std::vector<int>{0} : std::vector<int>{};
  }
  return m;
}

std::vector<bool> extract_boolean_model(const GadgetInstance& g,
                                        const BlockModel& beta) {
  ClausalFormula compiled = compile_instance(g.instance);
  if (!eval_block_model(compiled, beta))
    throw Error("block model does not satisfy the gadget");
  auto blocks_of = [&](VarId v) -> const std::vector<int>& {
    auto it = beta.assignment.find(g.instance.vars[v]);
    if (it == beta.assignment.end())
      throw Error("block model misses variable " + g.instance.vars[v]);
    return it->second;
  };
  const auto& tb = blocks_of(g.t);
  const auto& fb = blocks_of(g.f);
  int a = -1;
  for (int b : tb)
    if (std::find(fb.begin(), fb.end(), b) == fb.end() && (a < 0 || b < a))
      a = b;
  if (a < 0) throw Error("no block separates t from f");
  std::vector<bool> out;
  for (const auto& pair : g.var_pair) {
    const auto& xb = blocks_of(pair[0]);
    out.push_back(std::find(xb.begin(), xb.end(), a) != xb.end());
  }
  return out;
}

}  // namespace setcsp
