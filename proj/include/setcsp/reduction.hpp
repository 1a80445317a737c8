#pragma once

#include <string>
#include <vector>

#include "setcsp/formula.hpp"
#include "setcsp/oracle.hpp"
#include "setcsp/outer_res.hpp"

namespace setcsp {

// ---------------------------------------------------------------------------
// Compile-time pipeline turning relation definitions into Horn-Horn
// templates: rewrite all inner clauses to Horn form (preserving the
// satisfying core assignments, not general equivalence), then greedily
// remove redundant outer literals, then certify the outer-Horn property.
// ---------------------------------------------------------------------------

struct RewriteStep {
  enum class Kind { SplitPositive, SplitClause, RemoveLiteral };
  Kind kind;
  int clause = -1;
  int literal = -1;
  int inner = -1;  // inner clause index for the split steps
};

struct ReductionOutcome {
  bool horn_horn = false;
  ClausalFormula form;  // template on success, strongly reduced form on failure
  std::vector<RewriteStep> log;
  int offending_clause = -1;  // first clause with two positive literals
};

/// Splits non-Horn inner clauses until every inner clause is Horn.  A
/// positive literal whose term has a clause with positives x1..xk (k >= 2)
/// becomes k literals, one per choice of xi; a negative literal's clause is
/// split across k copies of its outer clause.  The output has the same
/// satisfying core assignments as the input but is not equivalent to it in
/// general.
ClausalFormula inner_hornify(const ClausalFormula& f,
                             std::vector<RewriteStep>* log = nullptr);

/// Greedy removal of outer literals whose removal keeps the formula
/// equivalent, to fixpoint in clause-then-literal order, restarting after
/// each removal.  On all-inner-Horn input, equivalence coincides with
/// having the same satisfying core assignments, so the semantic check below
/// implements strong reduction exactly: every literal of such a formula is
/// strongly preserved by the injective core embedding.
ClausalFormula strongly_reduce(const ClausalFormula& f,
                               const OracleConfig& cfg = {},
                               std::vector<RewriteStep>* log = nullptr);

/// normalize -> inner_hornify -> strongly_reduce -> classify.  When the
/// hornified form is already Horn-Horn the strong-reduction pass (and its
/// enumeration cap) is skipped; the verdict is unaffected because literal
/// removal cannot introduce positive literals.
ReductionOutcome reduce_relation(const RelationDef& def,
                                 const OracleConfig& cfg = {});

struct LanguageReduction {
  bool ok = false;
  LanguageTemplates templates;
  std::string failed_relation;
  ReductionOutcome failure;
};

/// All-or-nothing reduction of every definition.
LanguageReduction reduce_language(const std::vector<RelationDef>& defs,
                                  const OracleConfig& cfg = {});

}  // namespace setcsp
