#include "setcsp/formula.hpp"

#include <algorithm>
#include <utility>

namespace setcsp {

const RelationDef* CspInstance::find_def(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

bool structurally_equal(const TermExpr& a, const TermExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == TermExpr::Kind::Var) return a.var == b.var;
  if (a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(a.args[i], b.args[i])) return false;
  return true;
}

bool structurally_equal(const SurfaceFormula& a, const SurfaceFormula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == SurfaceFormula::Kind::Atom)
    return a.equal == b.equal && structurally_equal(a.lhs, b.lhs) &&
           structurally_equal(a.rhs, b.rhs);
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  return true;
}

TermExpr tvar(std::string name) {
  TermExpr t;
  t.kind = TermExpr::Kind::Var;
  t.var = std::move(name);
  return t;
}
TermExpr tzero() {
  TermExpr t;
  t.kind = TermExpr::Kind::Zero;
  return t;
}
TermExpr tone() {
  TermExpr t;
  t.kind = TermExpr::Kind::One;
  return t;
}
TermExpr tmeet(std::vector<TermExpr> args) {
  TermExpr t;
  t.kind = TermExpr::Kind::Meet;
  t.args = std::move(args);
  return t;
}
TermExpr tjoin(std::vector<TermExpr> args) {
  TermExpr t;
  t.kind = TermExpr::Kind::Join;
  t.args = std::move(args);
  return t;
}
TermExpr tcomp(TermExpr arg) {
  TermExpr t;
  t.kind = TermExpr::Kind::Complement;
  t.args.push_back(std::move(arg));
  return t;
}
SurfaceFormula fatom(TermExpr lhs, TermExpr rhs, bool equal) {
  SurfaceFormula f;
  f.kind = SurfaceFormula::Kind::Atom;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  f.equal = equal;
  return f;
}
SurfaceFormula fand(std::vector<SurfaceFormula> children) {
  SurfaceFormula f;
  f.kind = SurfaceFormula::Kind::And;
  f.children = std::move(children);
  return f;
}
SurfaceFormula for_(std::vector<SurfaceFormula> children) {
  SurfaceFormula f;
  f.kind = SurfaceFormula::Kind::Or;
  f.children = std::move(children);
  return f;
}
SurfaceFormula fnot(SurfaceFormula child) {
  SurfaceFormula f;
  f.kind = SurfaceFormula::Kind::Not;
  f.children.push_back(std::move(child));
  return f;
}

TermExpr desugar_atom_term(const TermExpr& lhs, const TermExpr& rhs) {
  // s == t  <=>  (~s | t) & (~t | s) == 1
  return tmeet({tjoin({tcomp(lhs), rhs}), tjoin({tcomp(rhs), lhs})});
}

SurfaceFormula desugar_atom(const SurfaceFormula& atom) {
  if (atom.kind != SurfaceFormula::Kind::Atom)
    throw Error("desugar_atom: not an atom");
  if (atom.rhs.kind == TermExpr::Kind::One) return atom;
  SurfaceFormula out = fatom(desugar_atom_term(atom.lhs, atom.rhs), tone(),
                             atom.equal);
  out.span = atom.span;
  return out;
}

namespace {

void tidy_clause(InnerClause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
}

// True when the clause contains x and ~x, making it identically 1.
bool tautological(const InnerClause& c) {
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].var == c[i + 1].var && c[i].positive != c[i + 1].positive)
      return true;
  return false;
}

void tidy_term(Term& t) {
  for (auto& c : t) tidy_clause(c);
  t.erase(std::remove_if(t.begin(), t.end(), tautological), t.end());
  // A 0 factor collapses the whole meet.
  for (const auto& c : t)
    if (c.empty()) {
      t = {InnerClause{}};
      return;
    }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
}

Term cnf_rec(const TermExpr& t, bool negate,
             const std::map<std::string, VarId>& ids) {
  using K = TermExpr::Kind;
  switch (t.kind) {
    case K::Var: {
      auto it = ids.find(t.var);
      if (it == ids.end()) throw Error("unknown variable: " + t.var);
      return {InnerClause{InnerLit{it->second, !negate}}};
    }
    case K::Zero:
      return negate ? Term{} : Term{InnerClause{}};
    case K::One:
      return negate ? Term{InnerClause{}} : Term{};
    case K::Complement:
      return cnf_rec(t.args[0], !negate, ids);
    case K::Meet:
    case K::Join: {
      bool conjunctive = (t.kind == K::Meet) != negate;
      if (conjunctive) {
        Term out;
        for (const auto& a : t.args) {
          Term part = cnf_rec(a, negate, ids);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      // Disjunction: cross product of the factors' clause sets.
      Term out = {InnerClause{}};
      for (const auto& a : t.args) {
        Term part = cnf_rec(a, negate, ids);
        Term next;
        next.reserve(out.size() * part.size());
        for (const auto& c1 : out)
          for (const auto& c2 : part) {
            InnerClause merged = c1;
            merged.insert(merged.end(), c2.begin(), c2.end());
            next.push_back(std::move(merged));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  throw Error("unreachable term kind");
}

void collect_term_vars(const TermExpr& t, std::vector<std::string>& out) {
  if (t.kind == TermExpr::Kind::Var) {
    if (std::find(out.begin(), out.end(), t.var) == out.end())
      out.push_back(t.var);
    return;
  }
  for (const auto& a : t.args) collect_term_vars(a, out);
}

void collect_formula_vars(const SurfaceFormula& f,
                          std::vector<std::string>& out) {
  if (f.kind == SurfaceFormula::Kind::Atom) {
    collect_term_vars(f.lhs, out);
    collect_term_vars(f.rhs, out);
    return;
  }
  for (const auto& c : f.children) collect_formula_vars(c, out);
}

// Outer CNF with negation pushed to atom polarity.
std::vector<OuterClause> outer_cnf(const SurfaceFormula& f, bool negate,
                                   const std::map<std::string, VarId>& ids) {
  using K = SurfaceFormula::Kind;
  switch (f.kind) {
    case K::Not:
      return outer_cnf(f.children[0], !negate, ids);
    case K::Atom: {
      SurfaceFormula a = desugar_atom(f);
      Term t = to_inner_cnf(a.lhs, ids);
      OuterLit lit{std::move(t), a.equal != negate};
      return {OuterClause{std::move(lit)}};
    }
    case K::And:
    case K::Or: {
      bool conjunctive = (f.kind == K::And) != negate;
      if (conjunctive) {
        std::vector<OuterClause> out;
        for (const auto& c : f.children) {
          auto part = outer_cnf(c, negate, ids);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      std::vector<OuterClause> out = {OuterClause{}};
      for (const auto& c : f.children) {
        auto part = outer_cnf(c, negate, ids);
        std::vector<OuterClause> next;
        next.reserve(out.size() * part.size());
        for (const auto& c1 : out)
          for (const auto& c2 : part) {
            OuterClause merged = c1;
            merged.insert(merged.end(), c2.begin(), c2.end());
            next.push_back(std::move(merged));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace

Term to_inner_cnf(const TermExpr& t, const std::map<std::string, VarId>& ids) {
  Term out = cnf_rec(t, false, ids);
  tidy_term(out);
  return out;
}

std::vector<std::string> collect_vars(const SurfaceFormula& f) {
  std::vector<std::string> out;
  collect_formula_vars(f, out);
  return out;
}

ClausalFormula to_clausal(const SurfaceFormula& f,
                          const std::vector<std::string>& seed_vars) {
  ClausalFormula out;
  out.vars = seed_vars;
  for (const auto& v : collect_vars(f))
    if (std::find(out.vars.begin(), out.vars.end(), v) == out.vars.end())
      out.vars.push_back(v);
  std::map<std::string, VarId> ids;
  for (size_t i = 0; i < out.vars.size(); ++i)
    ids[out.vars[i]] = static_cast<VarId>(i);
  out.clauses = outer_cnf(f, false, ids);
  for (auto& cl : out.clauses)
    for (auto& lit : cl) tidy_term(lit.term);
  return out;
}

ClausalFormula normalize_clause_set(const ClausalFormula& f) {
  ClausalFormula out;
  out.vars = f.vars;
  for (const auto& clause : f.clauses) {
    OuterClause kept;
    bool clause_true = false;
    for (const auto& lit : clause) {
      Term t = lit.term;
      tidy_term(t);
      bool is_one = t.empty();
      bool is_zero = t.size() == 1 && t[0].empty();
      if (lit.positive) {
        if (is_one) {
          clause_true = true;
          break;
        }
        if (is_zero) continue;  // 0 == 1 is false
      } else {
        if (is_zero) {
          clause_true = true;  // 0 != 1
          break;
        }
        if (is_one) continue;  // 1 != 1 is false
      }
      kept.push_back(OuterLit{std::move(t), lit.positive});
    }
    if (clause_true) continue;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    // t == 1 or t != 1 over the same term is a tautology.
    bool taut = false;
    for (size_t i = 0; i + 1 < kept.size(); ++i)
      if (kept[i].term == kept[i + 1].term &&
          kept[i].positive != kept[i + 1].positive)
        taut = true;
    if (taut) continue;
    out.clauses.push_back(std::move(kept));
  }
  std::sort(out.clauses.begin(), out.clauses.end());
  out.clauses.erase(std::unique(out.clauses.begin(), out.clauses.end()),
                    out.clauses.end());
  return out;
}

HornReport classify_horn(const ClausalFormula& f) {
  HornReport r;
  r.outer_horn = true;
  r.positive_inner_horn = true;
  r.all_inner_horn = true;
  for (const auto& clause : f.clauses) {
    int positives = 0;
    for (const auto& lit : clause) {
      if (lit.positive) ++positives;
      for (const auto& ic : lit.term) {
        int pos = 0;
        for (const auto& l : ic)
          if (l.positive) ++pos;
        if (pos > 1) {
          r.all_inner_horn = false;
          if (lit.positive) r.positive_inner_horn = false;
        }
      }
    }
    if (positives > 1) r.outer_horn = false;
  }
  r.horn_horn = r.outer_horn && r.positive_inner_horn;
  return r;
}

ClausalFormula substitute(const ClausalFormula& tmpl,
                          const std::vector<VarId>& args,
                          const std::vector<std::string>& target_vars) {
  if (args.size() != tmpl.vars.size())
    throw ArityError("substitute: expected " +
                     std::to_string(tmpl.vars.size()) + " arguments, got " +
                     std::to_string(args.size()));
  ClausalFormula out;
  out.vars = target_vars;
  out.clauses = tmpl.clauses;
  for (auto& clause : out.clauses)
    for (auto& lit : clause)
      for (auto& ic : lit.term)
        for (auto& l : ic) l.var = args[l.var];
  return normalize_clause_set(out);
}

namespace {

ClausalFormula relation_template(const RelationDef& def) {
  ClausalFormula t = to_clausal(def.body, def.params);
  if (t.vars.size() != def.params.size())
    throw Error("relation " + def.name + " uses a variable outside its " +
                "parameter list");
  return t;
}

}  // namespace

ClausalFormula compile_instance(const CspInstance& inst) {
  std::map<std::string, ClausalFormula> templates;
  for (const auto& d : inst.defs) templates[d.name] = relation_template(d);
  return compile_instance(inst, templates);
}

ClausalFormula compile_instance(
    const CspInstance& inst,
    const std::map<std::string, ClausalFormula>& templates) {
  ClausalFormula out;
  out.vars = inst.vars;
  for (const auto& c : inst.constraints) {
    auto it = templates.find(c.relation);
    if (it == templates.end())
      throw Error("no template for relation " + c.relation);
    const ClausalFormula& tmpl = it->second;
    if (c.args.size() != tmpl.vars.size())
      throw ArityError(c.relation + " expects " +
                       std::to_string(tmpl.vars.size()) +
                       " arguments, got " + std::to_string(c.args.size()));
    for (OuterClause clause : tmpl.clauses) {
      for (auto& lit : clause)
        for (auto& ic : lit.term)
          for (auto& l : ic) l.var = c.args[l.var];
      out.clauses.push_back(std::move(clause));
    }
  }
  return normalize_clause_set(out);
}

}  // namespace setcsp
