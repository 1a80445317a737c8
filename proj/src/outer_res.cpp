#include "setcsp/outer_res.hpp"

#include <algorithm>
#include <stdexcept>

#include "setcsp/inner_res.hpp"

namespace setcsp {

namespace {

// Mutable per-literal view of one outer clause during a solve.
struct LitState {
  const OuterLit* lit = nullptr;
  std::vector<char> inner_alive;  // negative literals only
  int alive_count = 0;
  bool removed = false;
};

struct ClauseState {
  std::vector<LitState> lits;
  int live_lits = 0;
  bool in_psi = false;

  bool positive_unit() const {
    if (live_lits != 1) return false;
    for (const auto& l : lits)
      if (!l.removed) return l.lit->positive;
    return false;
  }
};

void split_units(const InnerClause& d, std::vector<VarId>& zero,
                 std::vector<VarId>& one) {
  zero.clear();
  one.clear();
  for (const auto& lit : d) (lit.positive ? zero : one).push_back(lit.var);
}

}  // namespace

SolveOutcome outer_res(const ClausalFormula& f) {
  HornReport report = classify_horn(f);
  if (!report.horn_horn)
    throw NotHornHorn("outer resolution requires a Horn-Horn clause set");
  int n = static_cast<int>(f.vars.size());

  std::vector<ClauseState> state(f.clauses.size());
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    for (const auto& lit : f.clauses[ci]) {
      LitState ls;
      ls.lit = &lit;
      if (!lit.positive) {
        ls.inner_alive.assign(lit.term.size(), 1);
        ls.alive_count = static_cast<int>(lit.term.size());
      }
      state[ci].lits.push_back(std::move(ls));
    }
    state[ci].live_lits = static_cast<int>(state[ci].lits.size());
  }

  SolveOutcome out;
  InnerSolver solver(n);
  std::vector<VarId> zero, one;

  bool changed = true;
  while (changed) {
    changed = false;
    ++out.stats.iterations;

    for (size_t ci = 0; ci < state.size(); ++ci) {
      if (state[ci].live_lits == 0) {
        out.trace.push_back(
            {TraceEvent::Kind::EmptyClause, static_cast<int>(ci), -1, -1});
        return out;  // UNSAT
      }
    }

    for (size_t ci = 0; ci < state.size(); ++ci) {
      if (state[ci].in_psi || !state[ci].positive_unit()) continue;
      state[ci].in_psi = true;
      for (const auto& l : state[ci].lits)
        if (!l.removed)
          for (const auto& d : l.lit->term) solver.add_clause(d);
    }
    ++out.stats.inner_res_calls;
    if (solver.conflicted()) {
      out.trace.push_back({TraceEvent::Kind::PsiReject, -1, -1, -1});
      return out;  // UNSAT
    }

    for (size_t ci = 0; ci < state.size(); ++ci) {
      for (size_t li = 0; li < state[ci].lits.size(); ++li) {
        LitState& ls = state[ci].lits[li];
        if (ls.removed || ls.lit->positive) continue;
        for (size_t di = 0; di < ls.lit->term.size(); ++di) {
          if (!ls.inner_alive[di]) continue;
          split_units(ls.lit->term[di], zero, one);
          ++out.stats.inner_res_calls;
          if (!solver.query(zero, one)) {
            ls.inner_alive[di] = 0;
            --ls.alive_count;
            ++out.stats.inner_clauses_removed;
            out.trace.push_back({TraceEvent::Kind::RemoveInnerClause,
                                 static_cast<int>(ci), static_cast<int>(li),
                                 static_cast<int>(di)});
            changed = true;
          }
        }
        if (ls.alive_count == 0) {
          ls.removed = true;
          --state[ci].live_lits;
          ++out.stats.literals_removed;
          out.trace.push_back({TraceEvent::Kind::RemoveLiteral,
                               static_cast<int>(ci), static_cast<int>(li),
                               -1});
        }
      }
    }
  }

  // Accepted: one block per surviving inner clause of a negative literal,
  // each block carrying that clause's minimal countermodel.
  out.sat = true;
  std::vector<std::vector<uint8_t>> alphas;
  for (const auto& cs : state) {
    for (const auto& ls : cs.lits) {
      if (ls.removed || ls.lit->positive) continue;
      for (size_t di = 0; di < ls.lit->term.size(); ++di) {
        if (!ls.inner_alive[di]) continue;
        split_units(ls.lit->term[di], zero, one);
        std::vector<uint8_t> alpha;
        ++out.stats.inner_res_calls;
        if (!solver.query(zero, one, &alpha))
          throw std::logic_error("surviving inner clause became entailed");
        alphas.push_back(std::move(alpha));
      }
    }
  }
  if (alphas.empty()) alphas.push_back(solver.values());

  out.model.blocks = static_cast<int>(alphas.size());
  for (int x = 0; x < n; ++x) {
    std::vector<int> blocks;
    for (size_t j = 0; j < alphas.size(); ++j)
      if (alphas[j][x]) blocks.push_back(static_cast<int>(j));
    out.model.assignment[f.vars[x]] = std::move(blocks);
  }
  if (!eval_block_model(f, out.model))
    throw std::logic_error("constructed model fails verification");
  return out;
}

bool replay_trace(const ClausalFormula& f,
                  const std::vector<TraceEvent>& tr) {
  if (tr.empty()) return false;
  int n = static_cast<int>(f.vars.size());

  std::vector<std::vector<char>> lit_removed(f.clauses.size());
  std::vector<std::vector<std::vector<char>>> inner_alive(f.clauses.size());
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    lit_removed[ci].assign(f.clauses[ci].size(), 0);
    inner_alive[ci].resize(f.clauses[ci].size());
    for (size_t li = 0; li < f.clauses[ci].size(); ++li)
      if (!f.clauses[ci][li].positive)
        inner_alive[ci][li].assign(f.clauses[ci][li].term.size(), 1);
  }

  InnerSolver solver(n);
  std::vector<char> in_psi(f.clauses.size(), 0);
  auto refresh_psi = [&] {
    for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
      if (in_psi[ci]) continue;
      int live = 0;
      bool positive = false;
      for (size_t li = 0; li < f.clauses[ci].size(); ++li)
        if (!lit_removed[ci][li]) {
          ++live;
          positive = f.clauses[ci][li].positive;
        }
      if (live == 1 && positive) {
        in_psi[ci] = 1;
        for (size_t li = 0; li < f.clauses[ci].size(); ++li)
          if (!lit_removed[ci][li])
            for (const auto& d : f.clauses[ci][li].term) solver.add_clause(d);
      }
    }
  };
  refresh_psi();

  std::vector<VarId> zero, one;
  for (size_t ei = 0; ei < tr.size(); ++ei) {
    const TraceEvent& e = tr[ei];
    bool last = ei + 1 == tr.size();
    switch (e.kind) {
      case TraceEvent::Kind::RemoveInnerClause: {
        if (e.clause < 0 || e.clause >= static_cast<int>(f.clauses.size()))
          return false;
        const OuterClause& cl = f.clauses[e.clause];
        if (e.literal < 0 || e.literal >= static_cast<int>(cl.size()) ||
            cl[e.literal].positive)
          return false;
        const Term& t = cl[e.literal].term;
        if (e.inner < 0 || e.inner >= static_cast<int>(t.size()) ||
            !inner_alive[e.clause][e.literal][e.inner])
          return false;
        // The run's justification used a psi no larger than the current
        // one, and entailment is monotone in psi.
        split_units(t[e.inner], zero, one);
        if (solver.conflicted()) return false;
        if (solver.query(zero, one)) return false;  // not entailed
        inner_alive[e.clause][e.literal][e.inner] = 0;
        break;
      }
      case TraceEvent::Kind::RemoveLiteral: {
        if (e.clause < 0 || e.clause >= static_cast<int>(f.clauses.size()))
          return false;
        const OuterClause& cl = f.clauses[e.clause];
        if (e.literal < 0 || e.literal >= static_cast<int>(cl.size()) ||
            cl[e.literal].positive || lit_removed[e.clause][e.literal])
          return false;
        for (char alive : inner_alive[e.clause][e.literal])
          if (alive) return false;
        lit_removed[e.clause][e.literal] = 1;
        refresh_psi();
        break;
      }
      case TraceEvent::Kind::PsiReject:
        return last && solver.conflicted();
      case TraceEvent::Kind::EmptyClause: {
        if (!last || e.clause < 0 ||
            e.clause >= static_cast<int>(f.clauses.size()))
          return false;
        for (size_t li = 0; li < f.clauses[e.clause].size(); ++li)
          if (!lit_removed[e.clause][li]) return false;
        return true;
      }
    }
  }
  return false;  // trace did not end in a rejection
}

LanguageTemplates make_raw_templates(const std::vector<RelationDef>& defs) {
  LanguageTemplates out;
  out.raw = true;
  for (const auto& def : defs) {
    ClausalFormula t =
        normalize_clause_set(to_clausal(def.body, def.params));
    if (t.vars.size() != def.params.size())
      throw Error("relation " + def.name +
                  " uses a variable outside its parameter list");
    if (!classify_horn(t).horn_horn)
      throw NotHornHorn("relation " + def.name + " is not Horn-Horn");
    out.by_relation[def.name] = std::move(t);
  }
  return out;
}

SolveOutcome solve_instance(const CspInstance& inst,
                            const LanguageTemplates& templates) {
  for (const auto& c : inst.constraints)
    if (!templates.by_relation.count(c.relation))
      throw MissingTemplate("no template for relation " + c.relation);
  ClausalFormula f = compile_instance(inst, templates.by_relation);
  return outer_res(f);
}

}  // namespace setcsp
