#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setcsp/formula.hpp"
#include "setcsp/oracle.hpp"
#include "setcsp/reduction.hpp"

namespace setcsp {

// ---------------------------------------------------------------------------
// Membership test for the tractable class: combines the syntactic
// certificate of the reduction pipeline with a finite counterexample search
// built from finite analogs of the pairing and core embeddings.
// ---------------------------------------------------------------------------

/// Tagged disjoint union of two atom sets: an isomorphism between the
/// product of the two powerset algebras and the powerset of the union.
uint64_t finite_i(uint64_t u, int m1, uint64_t v, int m2);

/// Finite core embedding from subsets of an m-atom set A into subsets of
/// P(A): x maps to its nonzero lower set { z != 0 : z <= x }, except the top
/// which maps to all of P(A).  Injective, strongly preserves meet, 0, and 1,
/// and forgets unions.  The result is a mask over the 2^m elements of P(A),
/// element z indexed by its subset mask.
uint64_t finite_e(uint64_t x, int m);

struct Counterexample {
  int atoms = 0;            // size of each source atom set
  FiniteAssignment u, v;    // two satisfying assignments
  std::vector<uint64_t> w;  // composite image, masks over P(A ⊎ A)
  int falsified_clause = -1;
};

/// Enumerates all pairs of satisfying assignments over an m-atom powerset
/// and tests the composite core-of-pairing image against the formula.  A
/// returned counterexample soundly proves non-membership; NONE proves
/// nothing.  Pairs are scanned in lexicographic order.
std::optional<Counterexample> search_ei_counterexample(const ClausalFormula& f,
                                                       int atom_budget = 1);

struct MembershipVerdict {
  enum class Kind { In, OutNotOuterHorn, OutCounterexample };
  Kind kind = Kind::In;
  ClausalFormula form;  // IN: template; OUT: strongly reduced form
  std::vector<RewriteStep> log;
  int offending_clause = -1;
  std::optional<Counterexample> cex;
  int guard_atoms = 0;       // atom budget used by the IN-side guard search
  long guard_pairs = 0;      // pairs examined without a counterexample
};

/// Runs the reduction pipeline; a non-outer-Horn result is a sound OUT
/// certificate.  A Horn-Horn result is guarded by the counterexample
/// search; a counterexample at that point would contradict the pipeline and
/// raises std::logic_error.
MembershipVerdict check_membership(const RelationDef& def,
                                   const OracleConfig& cfg = {},
                                   int atom_budget = 1);

/// Replayable text report of a counterexample.
std::string describe(const Counterexample& cex, const ClausalFormula& f);

}  // namespace setcsp
