#include "setcsp/reduction.hpp"

#include <algorithm>

namespace setcsp {

namespace {

// Positive variables and the negative remainder of an inner clause.
void split_inner(const InnerClause& c, std::vector<VarId>& pos,
                 InnerClause& negs) {
  pos.clear();
  negs.clear();
  for (const auto& lit : c) {
    if (lit.positive)
      pos.push_back(lit.var);
    else
      negs.push_back(lit);
  }
}

InnerClause horn_variant(const InnerClause& negs, VarId keep) {
  InnerClause out = negs;
  out.push_back(InnerLit{keep, true});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ClausalFormula inner_hornify(const ClausalFormula& f,
                             std::vector<RewriteStep>* log) {
  ClausalFormula out = f;
  std::vector<VarId> pos;
  InnerClause negs;
  bool again = true;
  while (again) {
    again = false;
    for (size_t ci = 0; ci < out.clauses.size() && !again; ++ci) {
      OuterClause& cl = out.clauses[ci];
      for (size_t li = 0; li < cl.size() && !again; ++li) {
        const Term& t = cl[li].term;
        for (size_t di = 0; di < t.size() && !again; ++di) {
          split_inner(t[di], pos, negs);
          if (pos.size() <= 1) continue;
          again = true;
          if (cl[li].positive) {
            // One literal per positive choice, within the same clause.
            if (log)
              log->push_back({RewriteStep::Kind::SplitPositive,
                              static_cast<int>(ci), static_cast<int>(li),
                              static_cast<int>(di)});
            OuterLit base = cl[li];
            std::vector<OuterLit> repl;
            for (VarId v : pos) {
              OuterLit nl = base;
              nl.term[di] = horn_variant(negs, v);
              repl.push_back(std::move(nl));
            }
            cl.erase(cl.begin() + li);
            cl.insert(cl.begin() + li, repl.begin(), repl.end());
          } else {
            // One copy of the whole outer clause per positive choice.
            if (log)
              log->push_back({RewriteStep::Kind::SplitClause,
                              static_cast<int>(ci), static_cast<int>(li),
                              static_cast<int>(di)});
            OuterClause base = cl;
            std::vector<OuterClause> repl;
            for (VarId v : pos) {
              OuterClause nc = base;
              nc[li].term[di] = horn_variant(negs, v);
              repl.push_back(std::move(nc));
            }
            out.clauses.erase(out.clauses.begin() + ci);
            out.clauses.insert(out.clauses.begin() + ci, repl.begin(),
                               repl.end());
          }
        }
      }
    }
  }
  return out;
}

ClausalFormula strongly_reduce(const ClausalFormula& f,
                               const OracleConfig& cfg,
                               std::vector<RewriteStep>* log) {
  ClausalFormula cur = f;
  bool again = true;
  while (again) {
    again = false;
    for (size_t ci = 0; ci < cur.clauses.size() && !again; ++ci) {
      for (size_t li = 0; li < cur.clauses[ci].size() && !again; ++li) {
        ClausalFormula candidate = cur;
        candidate.clauses[ci].erase(candidate.clauses[ci].begin() + li);
        if (oracle_equiv(cur, candidate, cfg)) {
          if (log)
            log->push_back({RewriteStep::Kind::RemoveLiteral,
                            static_cast<int>(ci), static_cast<int>(li), -1});
          cur = std::move(candidate);
          again = true;
        }
      }
    }
  }
  return cur;
}

ReductionOutcome reduce_relation(const RelationDef& def,
                                 const OracleConfig& cfg) {
  ClausalFormula base = to_clausal(def.body, def.params);
  if (base.vars.size() != def.params.size())
    throw Error("relation " + def.name +
                " uses a variable outside its parameter list");
  ReductionOutcome out;
  ClausalFormula horn =
      normalize_clause_set(inner_hornify(normalize_clause_set(base),
                                         &out.log));
  HornReport r = classify_horn(horn);
  if (r.horn_horn && r.all_inner_horn) {
    // Already certifiable; literal removal could only shrink the template,
    // never change the verdict, so skip the oracle-bound reduction pass.
    out.horn_horn = true;
    out.form = std::move(horn);
    return out;
  }
  ClausalFormula reduced =
      normalize_clause_set(strongly_reduce(horn, cfg, &out.log));
  r = classify_horn(reduced);
  out.horn_horn = r.outer_horn;
  out.form = std::move(reduced);
  if (!out.horn_horn) {
    for (size_t ci = 0; ci < out.form.clauses.size(); ++ci) {
      int positives = 0;
      for (const auto& lit : out.form.clauses[ci])
        if (lit.positive) ++positives;
      if (positives > 1) {
        out.offending_clause = static_cast<int>(ci);
        break;
      }
    }
  }
  return out;
}

LanguageReduction reduce_language(const std::vector<RelationDef>& defs,
                                  const OracleConfig& cfg) {
  LanguageReduction out;
  for (const auto& def : defs) {
    ReductionOutcome r = reduce_relation(def, cfg);
    if (!r.horn_horn) {
      out.failed_relation = def.name;
      out.failure = std::move(r);
      return out;
    }
    out.templates.by_relation[def.name] = std::move(r.form);
  }
  out.ok = true;
  return out;
}

}  // namespace setcsp
