#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "setcsp/formula.hpp"

namespace setcsp {

// ---------------------------------------------------------------------------
// Brute-force ground truth.
//
// The truth of a quantifier-free constraint formula under an assignment of
// subsets of an infinite set depends only on which of the 2^n minterm
// regions of its n variables are empty, and every nonzero emptiness pattern
// is realizable (assign each nonempty region an arbitrary nonempty class of
// a partition).  Satisfiability over the intended structure is therefore
// decidable by enumerating the 2^(2^n) - 1 nonzero patterns.  This module
// exists for desk-scale ground truth, not performance.
// ---------------------------------------------------------------------------

/// Nonzero emptiness record for the 2^n minterm regions of n variables.
/// Bit w of `bits` is set iff the region selected by valuation w (bit i of w
/// is the polarity of variable i) is nonempty.
struct MintermPattern {
  int n = 0;
  uint64_t bits = 0;
};

struct OracleConfig {
  int max_vars = 4;  // enumeration cap; raise explicitly when needed
};

/// Finite satisfying witness: a partition of the infinite universe into
/// `blocks` nonempty classes, each variable denoting the union of its listed
/// blocks.
struct BlockModel {
  int blocks = 1;
  std::map<std::string, std::vector<int>> assignment;  // sorted index lists
};

/// Assignment of subsets of a finite atom set; values are bit masks over
/// `atoms` atoms, indexed by variable id.
struct FiniteAssignment {
  int atoms = 0;
  std::vector<uint64_t> values;
};

bool eval_pattern(const ClausalFormula& f, const MintermPattern& b);

/// First satisfying pattern in lexicographic order (earlier regions more
/// significant), or nullopt for UNSAT.  Throws CapError above the cap.
std::optional<MintermPattern> oracle_sat(const ClausalFormula& f,
                                         const OracleConfig& cfg = {});

// Both formulas must share one variable list.
bool oracle_equiv(const ClausalFormula& f, const ClausalFormula& g,
                  const OracleConfig& cfg = {});
bool oracle_entails(const ClausalFormula& f, const ClausalFormula& g,
                    const OracleConfig& cfg = {});

bool eval_block_model(const ClausalFormula& f, const BlockModel& m);

/// Blocks are the nonempty regions in increasing region order; variable i
/// receives the blocks whose valuation sets bit i.
BlockModel pattern_to_block_model(const MintermPattern& b,
                                  const std::vector<std::string>& vars);

/// Evaluates a formula with per-variable subset masks over a universe of
/// `universe_bits` points (universe_bits <= 64).
bool eval_masks(const ClausalFormula& f, const std::vector<uint64_t>& values,
                int universe_bits);
/// Index of the first falsified outer clause, or -1 when satisfied.
int first_falsified_clause(const ClausalFormula& f,
                           const std::vector<uint64_t>& values,
                           int universe_bits);

bool eval_finite(const ClausalFormula& f, const FiniteAssignment& a);

/// Exhaustive search over assignments of subsets of a `points`-element
/// universe, first model found with variable 0 varying fastest.  A NONE
/// result does not imply unsatisfiability over the
/// infinite structure in general; it does for the 3SAT gadget family with
/// points = 1.
std::optional<BlockModel> brute_force_points(const CspInstance& inst,
                                             int points);

}  // namespace setcsp
