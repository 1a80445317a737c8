#include "setcsp/membership.hpp"

#include <sstream>
#include <stdexcept>

namespace setcsp {

uint64_t finite_i(uint64_t u, int m1, uint64_t v, int m2) {
  if (m1 < 0 || m2 < 0 || m1 + m2 > 64) throw Error("atom sets too large");
  return u | (v << m1);
}

uint64_t finite_e(uint64_t x, int m) {
  if (m < 0 || m > 6) throw Error("finite_e supports at most 6 atoms");
  uint64_t top = (m == 6) ? ~0ull : ((1ull << (1 << m)) - 1);
  uint64_t full = (1ull << m) - 1;
  if (x == full) return top;
  uint64_t out = 0;
  for (uint64_t z = 1; z <= full; ++z)
    if ((z & ~x) == 0) out |= 1ull << z;
  return out;
}

std::optional<Counterexample> search_ei_counterexample(const ClausalFormula& f,
                                                       int atom_budget) {
  int m = atom_budget;
  int n = static_cast<int>(f.vars.size());
  if (m < 1 || m > 3) throw CapError("atom budget must be in [1, 3]");
  if (n * m > 20)
    throw CapError("counterexample search: " + std::to_string(n) +
                   " variables over " + std::to_string(m) +
                   " atoms exceeds the enumeration cap");
  uint64_t per_var = 1ull << m;
  uint64_t total = 1ull << (n * m);

  std::vector<FiniteAssignment> sat;
  FiniteAssignment a;
  a.atoms = m;
  a.values.resize(n);
  for (uint64_t enc = 0; enc < total; ++enc) {
    // Variable 0 varies fastest.
    for (int i = 0; i < n; ++i)
      a.values[i] = (enc >> (i * m)) & (per_var - 1);
    if (eval_finite(f, a)) sat.push_back(a);
  }

  int universe = 1 << (2 * m);
  std::vector<uint64_t> w(n);
  for (const auto& u : sat) {
    for (const auto& v : sat) {
      for (int i = 0; i < n; ++i)
        w[i] = finite_e(finite_i(u.values[i], m, v.values[i], m), 2 * m);
      int falsified = first_falsified_clause(f, w, universe);
      if (falsified >= 0) {
        Counterexample cex;
        cex.atoms = m;
        cex.u = u;
        cex.v = v;
        cex.w = w;
        cex.falsified_clause = falsified;
        return cex;
      }
    }
  }
  return std::nullopt;
}

MembershipVerdict check_membership(const RelationDef& def,
                                   const OracleConfig& cfg, int atom_budget) {
  ReductionOutcome r = reduce_relation(def, cfg);
  MembershipVerdict out;
  out.form = std::move(r.form);
  out.log = std::move(r.log);
  if (!r.horn_horn) {
    out.kind = MembershipVerdict::Kind::OutNotOuterHorn;
    out.offending_clause = r.offending_clause;
    return out;
  }
  // Guard: the original definition must survive the counterexample search;
  // a hit here would contradict the certificate above.
  ClausalFormula original =
      normalize_clause_set(to_clausal(def.body, def.params));
  out.guard_atoms = atom_budget;
  if (auto cex = search_ei_counterexample(original, atom_budget)) {
    out.cex = std::move(cex);
    throw std::logic_error(
        "certified relation " + def.name +
        " has a violation witness:\n" + describe(*out.cex, original));
  }
  // Pair count examined: every pair of satisfying finite assignments.
  long sats = 0;
  {
    int n = static_cast<int>(original.vars.size());
    uint64_t per_var = 1ull << atom_budget;
    uint64_t total = 1ull << (n * atom_budget);
    FiniteAssignment a;
    a.atoms = atom_budget;
    a.values.resize(n);
    for (uint64_t enc = 0; enc < total; ++enc) {
      for (int i = 0; i < n; ++i)
        a.values[i] = (enc >> (i * atom_budget)) & (per_var - 1);
      if (eval_finite(original, a)) ++sats;
    }
  }
  out.guard_pairs = sats * sats;
  out.kind = MembershipVerdict::Kind::In;
  return out;
}

namespace {

std::string subset_text(uint64_t mask, int m) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < m; ++i) {
    if ((mask >> i) & 1) {
      if (!first) s += ",";
      s += static_cast<char>('a' + i);
      first = false;
    }
  }
  return s + "}";
}

std::string family_text(uint64_t mask, int m) {
  std::string s = "{";
  bool first = true;
  for (uint64_t z = 0; z < (1u << m); ++z) {
    if ((mask >> z) & 1) {
      if (!first) s += ", ";
      s += subset_text(z, m);
      first = false;
    }
  }
  return s + "}";
}

}  // namespace

std::string describe(const Counterexample& cex, const ClausalFormula& f) {
  std::ostringstream os;
  os << "violation over " << cex.atoms << "-atom source sets\n";
  for (size_t i = 0; i < f.vars.size(); ++i) {
    os << "  " << f.vars[i] << ": u=" << subset_text(cex.u.values[i],
                                                     cex.atoms)
       << " v=" << subset_text(cex.v.values[i], cex.atoms)
       << " composite=" << family_text(cex.w[i], 2 * cex.atoms) << "\n";
  }
  os << "  both u and v satisfy the formula; the composite falsifies clause "
     << cex.falsified_clause << "\n";
  return os.str();
}

}  // namespace setcsp
