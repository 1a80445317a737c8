#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace setcsp {

using VarId = int;

struct SourceSpan {
  int begin = 0;
  int end = 0;
  int line = 1;
  int column = 1;
};

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, SourceSpan s) : Error(msg), span(s) {}
  SourceSpan span;
};

class ArityError : public Error {
  using Error::Error;
};

/// Thrown when an operation would exceed a configured enumeration cap.
/// Caps are refused explicitly, never silently truncated.
class CapError : public Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Clausal form.
//
// A constraint formula is kept as an outer CNF (a conjunction of outer
// clauses) whose literals are "t == 1" or "t != 1" for terms t in inner CNF.
// An inner clause is a join of variables and complemented variables; a term
// is a meet of inner clauses.  The empty term denotes 1, an empty inner
// clause denotes 0, an empty outer clause denotes false, and the empty
// formula denotes true.
// ---------------------------------------------------------------------------

struct InnerLit {
  VarId var = 0;
  bool positive = true;  // x versus ~x
  auto operator<=>(const InnerLit&) const = default;
};

using InnerClause = std::vector<InnerLit>;  // sorted, duplicate-free
using Term = std::vector<InnerClause>;      // sorted, duplicate-free

struct OuterLit {
  Term term;
  bool positive = true;  // t == 1 versus t != 1
  auto operator<=>(const OuterLit&) const = default;
};

using OuterClause = std::vector<OuterLit>;

struct ClausalFormula {
  std::vector<OuterClause> clauses;
  std::vector<std::string> vars;  // id -> display name, dense ids
  bool operator==(const ClausalFormula&) const = default;
};

// ---------------------------------------------------------------------------
// Surface syntax trees (what the parser produces).
// ---------------------------------------------------------------------------

struct TermExpr {
  enum class Kind { Meet, Join, Complement, Zero, One, Var };
  Kind kind = Kind::Zero;
  std::vector<TermExpr> args;  // Meet/Join: 2+, Complement: 1
  std::string var;             // Kind::Var
  SourceSpan span;
};

struct SurfaceFormula {
  enum class Kind { And, Or, Not, Atom };
  Kind kind = Kind::Atom;
  std::vector<SurfaceFormula> children;  // And/Or: 2+, Not: 1
  TermExpr lhs, rhs;                     // Atom: lhs ==/!= rhs
  bool equal = true;
  SourceSpan span;
};

// Structural equality ignoring source spans.
bool structurally_equal(const TermExpr& a, const TermExpr& b);
bool structurally_equal(const SurfaceFormula& a, const SurfaceFormula& b);

// Tree builders for programmatic construction.
TermExpr tvar(std::string name);
TermExpr tzero();
TermExpr tone();
TermExpr tmeet(std::vector<TermExpr> args);
TermExpr tjoin(std::vector<TermExpr> args);
TermExpr tcomp(TermExpr arg);
SurfaceFormula fatom(TermExpr lhs, TermExpr rhs, bool equal = true);
SurfaceFormula fand(std::vector<SurfaceFormula> children);
SurfaceFormula for_(std::vector<SurfaceFormula> children);
SurfaceFormula fnot(SurfaceFormula child);

struct RelationDef {
  std::string name;
  std::vector<std::string> params;
  SurfaceFormula body;
  bool builtin = false;
};

struct Constraint {
  std::string relation;
  std::vector<VarId> args;
  SourceSpan span;
};

struct CspInstance {
  std::vector<RelationDef> defs;
  std::vector<std::string> vars;
  std::vector<Constraint> constraints;
  const RelationDef* find_def(const std::string& name) const;
};

struct HornReport {
  bool outer_horn = false;          // every clause has <= 1 positive literal
  bool positive_inner_horn = false; // inner clauses of positive literals Horn
  bool all_inner_horn = false;      // inner clauses of all literals Horn
  bool horn_horn = false;           // outer_horn && positive_inner_horn
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

// Rewrites "s == t" / "s != t" into an equivalent atom over a single term
// compared against 1, via ((~s | t) & (~t | s)).  Atoms whose right-hand
// side is already the constant 1 are returned unchanged.
SurfaceFormula desugar_atom(const SurfaceFormula& atom);
TermExpr desugar_atom_term(const TermExpr& lhs, const TermExpr& rhs);

// Inner CNF by pushing complements to variables and distributing joins over
// meets.  No auxiliary variables are introduced; the worst case is
// exponential, which is acceptable at relation arities.
Term to_inner_cnf(const TermExpr& t, const std::map<std::string, VarId>& ids);

// Full conversion: negation pushed to atoms (flipping their polarity), atoms
// desugared, outer connectives distributed into CNF.  Variables are interned
// in first-occurrence order after `seed_vars`.
ClausalFormula to_clausal(const SurfaceFormula& f,
                          const std::vector<std::string>& seed_vars = {});

// Deduplicates literals and clauses at both levels, drops tautological inner
// clauses (x and ~x), drops outer clauses made true by a positive literal
// with term 1, drops false literals (positive with term 0, negative with
// term 1), and drops clauses made true by a negative literal with term 0.
// Idempotent; the result is equivalent to the input.
ClausalFormula normalize_clause_set(const ClausalFormula& f);

HornReport classify_horn(const ClausalFormula& f);

// Textual substitution of template parameters by argument variables followed
// by normalization.  args[i] replaces template variable i; repeated
// arguments are allowed.
ClausalFormula substitute(const ClausalFormula& tmpl,
                          const std::vector<VarId>& args,
                          const std::vector<std::string>& target_vars);

// Variable names of a surface formula in first-occurrence order.
std::vector<std::string> collect_vars(const SurfaceFormula& f);

// Compiles an instance into one clausal formula over the instance variables.
// The raw overload converts each relation definition directly; the template
// overload substitutes pre-reduced templates.
ClausalFormula compile_instance(const CspInstance& inst);
ClausalFormula compile_instance(
    const CspInstance& inst,
    const std::map<std::string, ClausalFormula>& templates);

}  // namespace setcsp
