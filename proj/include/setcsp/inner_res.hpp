#pragma once

#include <cstdint>
#include <vector>

#include "setcsp/formula.hpp"

namespace setcsp {

// ---------------------------------------------------------------------------
// Positive unit resolution on inner clauses, counter-based and linear in the
// total literal count.  Rejection is sound for arbitrary clause shapes; the
// accepting model construction (propagated variables to 1, the rest to 0) is
// guaranteed for Horn clauses plus arbitrary unit clauses, the only shapes
// this project ever passes.
// ---------------------------------------------------------------------------

struct InnerOutcome {
  bool accepted = false;
  std::vector<uint8_t> model;     // on accept: var -> 0/1, total
  std::vector<VarId> propagated;  // propagation sequence
  int emptied_clause = -1;        // on reject: input clause that emptied
};

/// Incremental engine: a growing base clause set with unit-assumption
/// queries that undo their effects.  A query adds the unit clauses {~x} for
/// x in `assume_zero` and {y} for y in `assume_one` and reports whether the
/// combined set still admits a two-valued solution.
class InnerSolver {
 public:
  explicit InnerSolver(int var_count);

  int add_clause(const InnerClause& c);  // returns clause index
  bool conflicted() const { return conflict_; }
  int conflict_clause() const { return conflict_clause_; }
  const std::vector<VarId>& trail() const { return trail_; }
  bool value(VarId v) const { return value_[v] != 0; }
  const std::vector<uint8_t>& values() const { return value_; }
  int var_count() const { return static_cast<int>(value_.size()); }

  /// Accepts iff the base set plus the assumed units is satisfiable.  On
  /// accept, `model_out` (if given) receives the two-valued model.  State is
  /// restored before returning.
  bool query(const std::vector<VarId>& assume_zero,
             const std::vector<VarId>& assume_one,
             std::vector<uint8_t>* model_out = nullptr);

 private:
  struct Clause {
    std::vector<VarId> pos, neg;
    int open_neg = 0;
    bool satisfied = false;
  };
  struct Undo {
    std::vector<int> sats;
    std::vector<int> negs;
    std::vector<VarId> forbidden;
  };

  bool run(std::vector<VarId> queue, Undo* undo);

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> pos_occ_, neg_occ_;
  std::vector<uint8_t> value_;
  std::vector<uint8_t> forbidden_;
  std::vector<VarId> trail_;
  bool conflict_ = false;
  int conflict_clause_ = -1;
};

InnerOutcome inner_res(const std::vector<InnerClause>& clauses, int var_count);

/// True iff the meet of `psi` being 1 forces the join of `query` to be 1,
/// decided by running inner resolution on psi plus the negated query units.
bool entails_clause(const std::vector<InnerClause>& psi,
                    const InnerClause& query, int var_count);

}  // namespace setcsp
