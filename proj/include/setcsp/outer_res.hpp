#pragma once

#include <map>
#include <string>
#include <vector>

#include "setcsp/formula.hpp"
#include "setcsp/oracle.hpp"

namespace setcsp {

class NotHornHorn : public Error {
  using Error::Error;
};
class MissingTemplate : public Error {
  using Error::Error;
};

struct SolveStats {
  int iterations = 0;
  long inner_res_calls = 0;
  int literals_removed = 0;
  int inner_clauses_removed = 0;
};

struct TraceEvent {
  enum class Kind { RemoveInnerClause, RemoveLiteral, PsiReject, EmptyClause };
  Kind kind;
  int clause = -1;   // outer clause index in the input formula
  int literal = -1;  // literal index within that clause
  int inner = -1;    // inner clause index within the literal's term
};

struct SolveOutcome {
  bool sat = false;
  BlockModel model;                // on SAT; verified against the input
  std::vector<TraceEvent> trace;   // removal/rejection events, in order
  SolveStats stats;
};

/// Two-level resolution for normalized Horn-Horn clause sets.  Repeatedly:
/// reject on an empty outer clause; collect the inner clauses of positive
/// unit clauses; reject if they admit no two-valued solution; remove every
/// inner clause of a negative literal that they entail, and remove negative
/// literals whose terms empty.  On acceptance a block model is assembled
/// from one two-valued model per surviving inner clause of the negative
/// literals.  Throws NotHornHorn on a non-Horn-Horn input.
SolveOutcome outer_res(const ClausalFormula& f);

/// Re-applies an UNSAT trace to the input, re-checking each removal's
/// entailment justification and the final rejection.  True iff every step
/// is justified.
bool replay_trace(const ClausalFormula& f, const std::vector<TraceEvent>& tr);

/// Templates stamped by the reduction pipeline (see reduction.hpp).  The
/// solver is only correct for languages that pass the reduction; raw
/// Horn-Horn templates may be injected explicitly via make_raw_templates.
struct LanguageTemplates {
  std::map<std::string, ClausalFormula> by_relation;
  bool raw = false;
};

/// Expert escape hatch: accepts hand-written definitions whose clausal form
/// is already Horn-Horn, without the membership-preserving reduction.
/// Throws NotHornHorn otherwise.
LanguageTemplates make_raw_templates(const std::vector<RelationDef>& defs);

SolveOutcome solve_instance(const CspInstance& inst,
                            const LanguageTemplates& templates);

}  // namespace setcsp
