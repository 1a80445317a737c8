#pragma once

#include <string>

#include "setcsp/formula.hpp"
#include "setcsp/gadget.hpp"
#include "setcsp/oracle.hpp"

namespace setcsp {

// Grammar:
//   formula := disj
//   disj    := conj ("or" conj)*
//   conj    := unit ("and" unit)*
//   unit    := "not" unit | "(" formula ")" | atom
//   atom    := term ("==" | "!=") term
//   term    := tmeet
//   tmeet   := tjoin ("&" tjoin)*
//   tjoin   := tunary ("|" tunary)*
//   tunary  := "~" tunary | "(" term ")" | "0" | "1" | ident
// Term operators and formula connectives use disjoint tokens, so "&" binds
// looser than "|" without ambiguity at the formula level.
SurfaceFormula parse_formula(const std::string& text);

// Instance file: lines of
//   rel NAME(p1,...,pk) := formula
//   builtin NAME ...          (registers built-in gadget relations)
//   var v1 v2 ...
//   NAME(a1,...,ak)
// '#' starts a comment.
CspInstance parse_instance(const std::string& text);

ThreeSat parse_dimacs_3sat(const std::string& text);

std::string render(const TermExpr& t);
std::string render(const SurfaceFormula& f);
std::string render(const ClausalFormula& f);
std::string render(const CspInstance& inst);

// Witness JSON: {"blocks": s, "assignment": {"x": [0,2], ...}}, sorted keys
// and sorted index lists.
std::string encode_witness(const BlockModel& m);
BlockModel decode_witness(const std::string& text);

}  // namespace setcsp
