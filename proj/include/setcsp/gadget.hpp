#pragma once

#include <array>
#include <string>
#include <vector>

#include "setcsp/formula.hpp"
#include "setcsp/oracle.hpp"

namespace setcsp {

// 3SAT clause: exactly three DIMACS-style literals, +v / -v, 1-based.
struct ThreeSat {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// Satisfiability reduction target over the built-in relations
/// U(x,y,z): x|y == z, I(x,y,z): x&y == z, and Neq(x,y).  Per boolean
/// variable x a pair (x_t, x_f) with U(x_t,x_f,t), I(x_t,x_f,f); per clause
/// a fresh chaining variable u with U(v1,v2,u), U(u,v3,t); globally
/// Neq(t,f) and I(t,f,f).
struct GadgetInstance {
  CspInstance instance;
  VarId t = 0, f = 0;
  std::vector<std::array<VarId, 2>> var_pair;  // boolean var -> (x_t, x_f)
  std::vector<VarId> clause_var;               // clause -> u
};

GadgetInstance gadget_from_3sat(const ThreeSat& cnf);

/// One-block witness from a satisfying boolean assignment; throws Error if
/// the assignment does not satisfy the clauses.  assignment[i] is the value
/// of DIMACS variable i+1.
BlockModel lift_boolean_model(const ThreeSat& cnf, const GadgetInstance& g,
                              const std::vector<bool>& assignment);

/// Boolean assignment from any satisfying block model: pick the smallest
/// block in beta(t) \ beta(f) and read each x_t's membership.  Throws Error
/// if the model does not satisfy the gadget.
std::vector<bool> extract_boolean_model(const GadgetInstance& g,
                                        const BlockModel& beta);

bool eval_3sat(const ThreeSat& cnf, const std::vector<bool>& assignment);

std::vector<RelationDef> builtin_gadget_relations();

}  // namespace setcsp
