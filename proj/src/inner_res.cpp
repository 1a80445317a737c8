#include "setcsp/inner_res.hpp"

#include <algorithm>

namespace setcsp {

InnerSolver::InnerSolver(int var_count)
    : pos_occ_(var_count),
      neg_occ_(var_count),
      value_(var_count, 0),
      forbidden_(var_count, 0) {}

int InnerSolver::add_clause(const InnerClause& c) {
  int idx = static_cast<int>(clauses_.size());
  Clause cl;
  for (const auto& lit : c) {
    if (lit.var < 0 || lit.var >= var_count())
      throw Error("inner clause variable out of range");
    (lit.positive ? cl.pos : cl.neg).push_back(lit.var);
  }
  std::sort(cl.pos.begin(), cl.pos.end());
  cl.pos.erase(std::unique(cl.pos.begin(), cl.pos.end()), cl.pos.end());
  std::sort(cl.neg.begin(), cl.neg.end());
  cl.neg.erase(std::unique(cl.neg.begin(), cl.neg.end()), cl.neg.end());
  if (cl.pos.size() > 1)
    throw Error("inner resolution requires Horn clauses");
  for (VarId v : cl.pos) {
    pos_occ_[v].push_back(idx);
    if (value_[v]) cl.satisfied = true;
  }
  for (VarId v : cl.neg) {
    neg_occ_[v].push_back(idx);
    if (!value_[v]) ++cl.open_neg;
  }
  clauses_.push_back(std::move(cl));
  if (conflict_) return idx;
  const Clause& stored = clauses_[idx];
  if (!stored.satisfied && stored.open_neg == 0) {
    if (stored.pos.empty()) {
      conflict_ = true;
      conflict_clause_ = idx;
    } else {
      run({stored.pos[0]}, nullptr);
    }
  }
  return idx;
}

bool InnerSolver::run(std::vector<VarId> queue, Undo* undo) {
  size_t qi = 0;
  while (qi < queue.size()) {
    VarId v = queue[qi++];
    if (value_[v]) continue;
    if (forbidden_[v]) {
      if (!undo) conflict_ = true;
      return false;
    }
    value_[v] = 1;
    trail_.push_back(v);
    // Satisfy before decrementing so tautological clauses never fire.
    for (int ci : pos_occ_[v]) {
      if (!clauses_[ci].satisfied) {
        clauses_[ci].satisfied = true;
        if (undo) undo->sats.push_back(ci);
      }
    }
    for (int ci : neg_occ_[v]) {
      Clause& c = clauses_[ci];
      --c.open_neg;
      if (undo) undo->negs.push_back(ci);
      if (!c.satisfied && c.open_neg == 0) {
        if (c.pos.empty()) {
          if (!undo) {
            conflict_ = true;
            conflict_clause_ = ci;
          }
          return false;
        }
        queue.push_back(c.pos[0]);
      }
    }
  }
  return true;
}

bool InnerSolver::query(const std::vector<VarId>& assume_zero,
                        const std::vector<VarId>& assume_one,
                        std::vector<uint8_t>* model_out) {
  if (conflict_) return false;
  Undo undo;
  size_t trail_mark = trail_.size();
  auto restore = [&] {
    for (size_t i = trail_.size(); i > trail_mark; --i) value_[trail_[i - 1]] = 0;
    trail_.resize(trail_mark);
    for (int ci : undo.sats) clauses_[ci].satisfied = false;
    for (int ci : undo.negs) ++clauses_[ci].open_neg;
    for (VarId v : undo.forbidden) forbidden_[v] = 0;
  };
  bool ok = true;
  for (VarId v : assume_zero) {
    if (value_[v]) {
      ok = false;
      break;
    }
    if (!forbidden_[v]) {
      forbidden_[v] = 1;
      undo.forbidden.push_back(v);
    }
  }
  if (ok) ok = run(assume_one, &undo);
  if (ok && model_out) *model_out = value_;
  restore();
  return ok;
}

InnerOutcome inner_res(const std::vector<InnerClause>& clauses,
                       int var_count) {
  InnerSolver s(var_count);
  for (const auto& c : clauses) s.add_clause(c);
  InnerOutcome out;
  out.accepted = !s.conflicted();
  out.propagated = s.trail();
  if (out.accepted)
    out.model = s.values();
  else
    out.emptied_clause = s.conflict_clause();
  return out;
}

bool entails_clause(const std::vector<InnerClause>& psi,
                    const InnerClause& query, int var_count) {
  InnerSolver s(var_count);
  for (const auto& c : psi) s.add_clause(c);
  std::vector<VarId> zero, one;
  for (const auto& lit : query)
    (lit.positive ? zero : one).push_back(lit.var);
  return !s.query(zero, one);
}

}  // namespace setcsp
