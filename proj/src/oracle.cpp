#include "setcsp/oracle.hpp"

#include <algorithm>
#include <string>

#include "setcsp/bits.hpp"

namespace setcsp {

namespace {

// Region mask of a term: bit w is set iff the term evaluates to true under
// the boolean valuation w (bit i of w giving variable i).  A term equals 1
// exactly over the regions it covers, so under an emptiness pattern b the
// positive literal holds iff b & ~mask == 0.
uint64_t term_mask(const Term& t, int n) {
  uint64_t regions = ~0ull >> (64 - (1u << n));
  uint64_t mask = regions;
  for (const auto& clause : t) {
    uint64_t cm = 0;
    for (const auto& lit : clause) {
      uint64_t var_mask = 0;
      for (uint64_t w = 0; w < (1u << n); ++w)
        if ((w >> lit.var) & 1) var_mask |= 1ull << w;
      cm |= lit.positive ? var_mask : (regions & ~var_mask);
    }
    mask &= cm;
  }
  return mask;
}

struct MaskedFormula {
  int n = 0;
  uint64_t regions = 0;
  // Per clause, the positive and negative literals' term masks.
  std::vector<std::vector<std::pair<uint64_t, bool>>> clauses;

  explicit MaskedFormula(const ClausalFormula& f) {
    n = static_cast<int>(f.vars.size());
    regions = ~0ull >> (64 - (1u << n));
    clauses.reserve(f.clauses.size());
    for (const auto& cl : f.clauses) {
      std::vector<std::pair<uint64_t, bool>> lits;
      lits.reserve(cl.size());
      for (const auto& lit : cl)
        lits.emplace_back(regions & ~term_mask(lit.term, n), lit.positive);
      clauses.push_back(std::move(lits));
    }
  }

  bool eval(uint64_t bits) const {
    for (const auto& cl : clauses) {
      bool sat = false;
      for (const auto& [uncovered, positive] : cl)
        if (((bits & uncovered) == 0) == positive) {
          sat = true;
          break;
        }
      if (!sat) return false;
    }
    return true;
  }
};

void check_cap(const ClausalFormula& f, const OracleConfig& cfg) {
  int n = static_cast<int>(f.vars.size());
  if (n > cfg.max_vars || n > 6)
    throw CapError("oracle cap: formula has " + std::to_string(n) +
                   " variables, cap is " +
                   std::to_string(std::min(cfg.max_vars, 6)));
}

// Patterns in lexicographic order with region 0 most significant.
uint64_t rank_to_bits(uint64_t rank, int n) {
  uint64_t bits = 0;
  int regions = 1 << n;
  for (int w = 0; w < regions; ++w)
    if ((rank >> (regions - 1 - w)) & 1) bits |= 1ull << w;
  return bits;
}

}  // namespace

bool eval_pattern(const ClausalFormula& f, const MintermPattern& b) {
  if (b.n != static_cast<int>(f.vars.size()))
    throw Error("pattern dimension mismatch");
  if (b.bits == 0) throw Error("empty minterm pattern");
  if (b.n > 6) throw CapError("patterns support at most 6 variables");
  return MaskedFormula(f).eval(b.bits);
}

std::optional<MintermPattern> oracle_sat(const ClausalFormula& f,
                                         const OracleConfig& cfg) {
  check_cap(f, cfg);
  int n = static_cast<int>(f.vars.size());
  MaskedFormula mf(f);
  uint64_t total = n >= 6 ? ~0ull : ((1ull << (1 << n)) - 1);
  for (uint64_t rank = 1; rank <= total; ++rank) {
    uint64_t bits = rank_to_bits(rank, n);
    if (mf.eval(bits)) return MintermPattern{n, bits};
    if (rank == ~0ull) break;
  }
  return std::nullopt;
}

bool oracle_equiv(const ClausalFormula& f, const ClausalFormula& g,
                  const OracleConfig& cfg) {
  if (f.vars != g.vars)
    throw Error("oracle_equiv requires a shared variable list");
  check_cap(f, cfg);
  int n = static_cast<int>(f.vars.size());
  MaskedFormula mf(f), mg(g);
  uint64_t total = (1ull << (1 << n)) - 1;
  for (uint64_t bits = 1; bits <= total; ++bits)
    if (mf.eval(bits) != mg.eval(bits)) return false;
  return true;
}

bool oracle_entails(const ClausalFormula& f, const ClausalFormula& g,
                    const OracleConfig& cfg) {
  if (f.vars != g.vars)
    throw Error("oracle_entails requires a shared variable list");
  check_cap(f, cfg);
  int n = static_cast<int>(f.vars.size());
  MaskedFormula mf(f), mg(g);
  uint64_t total = (1ull << (1 << n)) - 1;
  for (uint64_t bits = 1; bits <= total; ++bits)
    if (mf.eval(bits) && !mg.eval(bits)) return false;
  return true;
}

bool eval_block_model(const ClausalFormula& f, const BlockModel& m) {
  int s = m.blocks;
  std::vector<Bits> values;
  values.reserve(f.vars.size());
  for (const auto& name : f.vars) {
    auto it = m.assignment.find(name);
    if (it == m.assignment.end())
      throw Error("block model misses variable " + name);
    Bits b(s);
    for (int idx : it->second) {
      if (idx < 0 || idx >= s)
        throw Error("block index out of range for " + name);
      b.set(idx);
    }
    values.push_back(std::move(b));
  }
  Bits clause_val(s);
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (const auto& lit : clause) {
      bool term_full = true;
      for (const auto& ic : lit.term) {
        clause_val.clear();
        for (const auto& l : ic) {
          if (l.positive)
            clause_val |= values[l.var];
          else
            clause_val.or_complement(values[l.var]);
        }
        if (!clause_val.full()) {
          term_full = false;
          break;
        }
      }
      if (term_full == lit.positive) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

BlockModel pattern_to_block_model(const MintermPattern& b,
                                  const std::vector<std::string>& vars) {
  if (static_cast<size_t>(b.n) != vars.size())
    throw Error("pattern dimension mismatch");
  BlockModel m;
  m.blocks = 0;
  for (const auto& v : vars) m.assignment[v] = {};
  for (uint64_t w = 0; w < (1u << b.n); ++w) {
    if (!((b.bits >> w) & 1)) continue;
    int block = m.blocks++;
    for (int i = 0; i < b.n; ++i)
      if ((w >> i) & 1) m.assignment[vars[i]].push_back(block);
  }
  if (m.blocks == 0) throw Error("empty minterm pattern");
  return m;
}

namespace {

bool eval_masked(const ClausalFormula& f, const std::vector<uint64_t>& values,
                 uint64_t universe, int* falsified) {
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    bool sat = false;
    for (const auto& lit : f.clauses[ci]) {
      bool term_full = true;
      for (const auto& ic : lit.term) {
        uint64_t v = 0;
        for (const auto& l : ic)
          v |= l.positive ? values[l.var] : (universe & ~values[l.var]);
        if (v != universe) {
          term_full = false;
          break;
        }
      }
      if (term_full == lit.positive) {
        sat = true;
        break;
      }
    }
    if (!sat) {
      if (falsified) *falsified = static_cast<int>(ci);
      return false;
    }
  }
  if (falsified) *falsified = -1;
  return true;
}

}  // namespace

bool eval_masks(const ClausalFormula& f, const std::vector<uint64_t>& values,
                int universe_bits) {
  if (universe_bits < 1 || universe_bits > 64)
    throw Error("universe must have between 1 and 64 points");
  if (values.size() < f.vars.size())
    throw Error("assignment misses variables");
  uint64_t universe = ~0ull >> (64 - universe_bits);
  return eval_masked(f, values, universe, nullptr);
}

int first_falsified_clause(const ClausalFormula& f,
                           const std::vector<uint64_t>& values,
                           int universe_bits) {
  if (universe_bits < 1 || universe_bits > 64)
    throw Error("universe must have between 1 and 64 points");
  if (values.size() < f.vars.size())
    throw Error("assignment misses variables");
  uint64_t universe = ~0ull >> (64 - universe_bits);
  int falsified = -1;
  eval_masked(f, values, universe, &falsified);
  return falsified;
}

bool eval_finite(const ClausalFormula& f, const FiniteAssignment& a) {
  return eval_masks(f, a.values, a.atoms);
}

std::optional<BlockModel> brute_force_points(const CspInstance& inst,
                                             int points) {
  if (points < 1 || points > 62) throw Error("points must be in [1, 62]");
  ClausalFormula f = compile_instance(inst);
  int n = static_cast<int>(f.vars.size());
  if (n * points > 26)
    throw CapError("brute_force_points: " + std::to_string(n) +
                   " variables over " + std::to_string(points) +
                   " points exceeds the enumeration cap");
  uint64_t universe = ~0ull >> (64 - points);
  uint64_t total = 1ull << (n * points);
  std::vector<uint64_t> values(n);
  for (uint64_t enc = 0; enc < total; ++enc) {
    // Variable 0 varies fastest.
    for (int i = 0; i < n; ++i)
      values[i] = (enc >> (i * points)) & universe;
    if (eval_masked(f, values, universe, nullptr)) {
      BlockModel m;
      m.blocks = points;
      for (int i = 0; i < n; ++i) {
        std::vector<int> blocks;
        for (int b = 0; b < points; ++b)
          if ((values[i] >> b) & 1) blocks.push_back(b);
        m.assignment[f.vars[i]] = std::move(blocks);
      }
      return m;
    }
  }
  return std::nullopt;
}

}  // namespace setcsp
