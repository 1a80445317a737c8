#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "setcsp/formula.hpp"
#include "setcsp/parser.hpp"

namespace setcsp::testing {

inline ClausalFormula clausal(const std::string& text,
                              const std::vector<std::string>& vars = {}) {
  return normalize_clause_set(to_clausal(parse_formula(text), vars));
}

inline RelationDef rel(const std::string& name,
                       const std::vector<std::string>& params,
                       const std::string& body) {
  RelationDef def;
  def.name = name;
  def.params = params;
  def.body = parse_formula(body);
  return def;
}

// All inner clauses over n variables with at most one positive literal,
// in a fixed enumeration order (each variable absent, positive, or
// negative).  Includes the empty clause.
inline std::vector<InnerClause> horn_clauses(int n) {
  std::vector<InnerClause> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    InnerClause c;
    int rest = code;
    int positives = 0;
    for (int v = 0; v < n; ++v) {
      int state = rest % 3;
      rest /= 3;
      if (state == 1) {
        c.push_back({v, true});
        ++positives;
      } else if (state == 2) {
        c.push_back({v, false});
      }
    }
    if (positives <= 1) out.push_back(std::move(c));
  }
  return out;
}

// All inner clauses over n variables, same encoding, no Horn restriction.
inline std::vector<InnerClause> all_clauses(int n) {
  std::vector<InnerClause> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    InnerClause c;
    int rest = code;
    for (int v = 0; v < n; ++v) {
      int state = rest % 3;
      rest /= 3;
      if (state == 1)
        c.push_back({v, true});
      else if (state == 2)
        c.push_back({v, false});
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<std::string> var_names(int n) {
  static const char* names[] = {"x", "y", "z", "w", "p", "q"};
  return std::vector<std::string>(names, names + n);
}

// The clause set as the single formula "meet of all clauses equals 1".
inline ClausalFormula meet_formula(std::vector<InnerClause> clauses, int n) {
  ClausalFormula f;
  f.vars = var_names(n);
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  f.clauses = {{OuterLit{std::move(clauses), true}}};
  return f;
}

// A single clause as the formula "join of its literals equals 1".
inline ClausalFormula join_formula(const InnerClause& c, int n) {
  ClausalFormula f;
  f.vars = var_names(n);
  f.clauses = {{OuterLit{Term{c}, true}}};
  return f;
}

}  // namespace setcsp::testing
