#include "setcsp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

namespace setcsp {

namespace {

struct Token {
  enum class Kind {
    Ident, Zero, One, And, Or, Not, Eq, Neq, Amp, Pipe, Tilde,
    LParen, RParen, End
  };
  Kind kind = Kind::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << msg << " at line " << tok_.span.line << ", column "
       << tok_.span.column;
    throw ParseError(os.str(), tok_.span);
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    tok_.span = {static_cast<int>(pos_), static_cast<int>(pos_), line_, col_};
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    auto single = [&](Token::Kind k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      bump();
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_' || text_[pos_] == '\''))
        bump();
      tok_.text = text_.substr(start, pos_ - start);
      if (tok_.text == "and")
        tok_.kind = Token::Kind::And;
      else if (tok_.text == "or")
        tok_.kind = Token::Kind::Or;
      else if (tok_.text == "not")
        tok_.kind = Token::Kind::Not;
      else
        tok_.kind = Token::Kind::Ident;
    } else if (c == '0') {
      single(Token::Kind::Zero);
    } else if (c == '1') {
      single(Token::Kind::One);
    } else if (c == '&') {
      single(Token::Kind::Amp);
    } else if (c == '|') {
      single(Token::Kind::Pipe);
    } else if (c == '~') {
      single(Token::Kind::Tilde);
    } else if (c == '(') {
      single(Token::Kind::LParen);
    } else if (c == ')') {
      single(Token::Kind::RParen);
    } else if (c == '=' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      tok_.kind = Token::Kind::Eq;
      tok_.text = "==";
      bump();
      bump();
    } else if (c == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      tok_.kind = Token::Kind::Neq;
      tok_.text = "!=";
      bump();
      bump();
    } else {
      fail(std::string("unknown token '") + c + "'");
    }
    tok_.span.end = static_cast<int>(pos_);
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

TermExpr parse_term(Lexer& lx);

TermExpr parse_tunary(Lexer& lx) {
  const Token& t = lx.peek();
  switch (t.kind) {
    case Token::Kind::Tilde: {
      SourceSpan span = lx.take().span;
      TermExpr out = tcomp(parse_tunary(lx));
      out.span = span;
      return out;
    }
    case Token::Kind::LParen: {
      lx.take();
      TermExpr out = parse_term(lx);
      if (lx.peek().kind != Token::Kind::RParen) lx.fail("expected ')'");
      lx.take();
      return out;
    }
    case Token::Kind::Zero: {
      TermExpr out = tzero();
      out.span = lx.take().span;
      return out;
    }
    case Token::Kind::One: {
      TermExpr out = tone();
      out.span = lx.take().span;
      return out;
    }
    case Token::Kind::Ident: {
      Token id = lx.take();
      TermExpr out = tvar(id.text);
      out.span = id.span;
      return out;
    }
    default:
      lx.fail("expected a term");
  }
}

TermExpr parse_tjoin(Lexer& lx) {
  TermExpr first = parse_tunary(lx);
  if (lx.peek().kind != Token::Kind::Pipe) return first;
  std::vector<TermExpr> args{std::move(first)};
  while (lx.peek().kind == Token::Kind::Pipe) {
    lx.take();
    args.push_back(parse_tunary(lx));
  }
  TermExpr out = tjoin(std::move(args));
  out.span = out.args.front().span;
  return out;
}

// "&" binds looser than "|": x | y & z parses as (x|y) & z.
TermExpr parse_term(Lexer& lx) {
  TermExpr first = parse_tjoin(lx);
  if (lx.peek().kind != Token::Kind::Amp) return first;
  std::vector<TermExpr> args{std::move(first)};
  while (lx.peek().kind == Token::Kind::Amp) {
    lx.take();
    args.push_back(parse_tjoin(lx));
  }
  TermExpr out = tmeet(std::move(args));
  out.span = out.args.front().span;
  return out;
}

SurfaceFormula parse_disj(Lexer& lx);

SurfaceFormula parse_unit(Lexer& lx) {
  if (lx.peek().kind == Token::Kind::Not) {
    SourceSpan span = lx.take().span;
    SurfaceFormula out = fnot(parse_unit(lx));
    out.span = span;
    return out;
  }
  if (lx.peek().kind == Token::Kind::LParen) {
    // Either a parenthesized formula or a parenthesized term starting an
    // atom; tell them apart by what follows the closing paren.
    Lexer probe = lx;
    probe.take();
    int depth = 1;
    while (depth > 0) {
      Token t = probe.take();
      if (t.kind == Token::Kind::End) lx.fail("unbalanced '('");
      if (t.kind == Token::Kind::LParen) ++depth;
      if (t.kind == Token::Kind::RParen) --depth;
    }
    Token::Kind next = probe.peek().kind;
    bool term_paren = next == Token::Kind::Eq || next == Token::Kind::Neq ||
                      next == Token::Kind::Amp || next == Token::Kind::Pipe;
    if (!term_paren) {
      lx.take();
      SurfaceFormula out = parse_disj(lx);
      if (lx.peek().kind != Token::Kind::RParen) lx.fail("expected ')'");
      lx.take();
      return out;
    }
  }
  SourceSpan span = lx.peek().span;
  TermExpr lhs = parse_term(lx);
  bool equal;
  if (lx.peek().kind == Token::Kind::Eq)
    equal = true;
  else if (lx.peek().kind == Token::Kind::Neq)
    equal = false;
  else
    lx.fail("expected '==' or '!='");
  lx.take();
  TermExpr rhs = parse_term(lx);
  SurfaceFormula out = fatom(std::move(lhs), std::move(rhs), equal);
  out.span = span;
  return out;
}

SurfaceFormula parse_conj(Lexer& lx) {
  SurfaceFormula first = parse_unit(lx);
  if (lx.peek().kind != Token::Kind::And) return first;
  std::vector<SurfaceFormula> children{std::move(first)};
  while (lx.peek().kind == Token::Kind::And) {
    lx.take();
    children.push_back(parse_unit(lx));
  }
  SurfaceFormula out = fand(std::move(children));
  out.span = out.children.front().span;
  return out;
}

SurfaceFormula parse_disj(Lexer& lx) {
  SurfaceFormula first = parse_conj(lx);
  if (lx.peek().kind != Token::Kind::Or) return first;
  std::vector<SurfaceFormula> children{std::move(first)};
  while (lx.peek().kind == Token::Kind::Or) {
    lx.take();
    children.push_back(parse_conj(lx));
  }
  SurfaceFormula out = for_(std::move(children));
  out.span = out.children.front().span;
  return out;
}

}  // namespace

SurfaceFormula parse_formula(const std::string& text) {
  Lexer lx(text);
  SurfaceFormula out = parse_disj(lx);
  if (lx.peek().kind != Token::Kind::End) lx.fail("trailing input");
  return out;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'')
      return false;
  return s != "and" && s != "or" && s != "not";
}

}  // namespace

CspInstance parse_instance(const std::string& text) {
  CspInstance inst;
  std::map<std::string, VarId> ids;
  auto intern = [&](const std::string& name) -> VarId {
    auto [it, fresh] =
        ids.try_emplace(name, static_cast<VarId>(inst.vars.size()));
    if (fresh) inst.vars.push_back(name);
    return it->second;
  };

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    SourceSpan span{0, 0, lineno, static_cast<int>(first) + 1};
    auto fail = [&](const std::string& msg) {
      throw ParseError("line " + std::to_string(lineno) + ": " + msg, span);
    };

    if (line.rfind("rel ", 0) == 0) {
      auto lp = line.find('(');
      auto rp = line.find(')');
      auto assign = line.find(":=");
      if (lp == std::string::npos || rp == std::string::npos || rp < lp ||
          assign == std::string::npos || assign < rp)
        fail("malformed relation definition");
      RelationDef def;
      def.name = line.substr(4, lp - 4);
      def.name.erase(std::remove_if(def.name.begin(), def.name.end(),
                                    ::isspace),
                     def.name.end());
      if (!valid_ident(def.name)) fail("bad relation name");
      if (inst.find_def(def.name))
        fail("duplicate relation name " + def.name);
      std::string params = line.substr(lp + 1, rp - lp - 1);
      std::replace(params.begin(), params.end(), ',', ' ');
      def.params = split_ws(params);
      for (const auto& p : def.params)
        if (!valid_ident(p)) fail("bad parameter name '" + p + "'");
      try {
        def.body = parse_formula(line.substr(assign + 2));
      } catch (const ParseError& e) {
        fail(e.what());
      }
      inst.defs.push_back(std::move(def));
      continue;
    }
    if (line.rfind("builtin", 0) == 0 &&
        (line.size() == 7 || std::isspace(
             static_cast<unsigned char>(line[7])))) {
      auto names = split_ws(line.substr(7));
      if (names.empty()) fail("builtin line names no relations");
      auto all = builtin_gadget_relations();
      for (const auto& n : names) {
        auto it = std::find_if(all.begin(), all.end(),
                               [&](const RelationDef& d) {
                                 return d.name == n;
                               });
        if (it == all.end()) fail("unknown builtin relation " + n);
        if (inst.find_def(n)) fail("duplicate relation name " + n);
        inst.defs.push_back(*it);
      }
      continue;
    }
    if (line.rfind("var", 0) == 0 &&
        (line.size() == 3 ||
         std::isspace(static_cast<unsigned char>(line[3])))) {
      for (const auto& v : split_ws(line.substr(3))) {
        if (!valid_ident(v)) fail("bad variable name '" + v + "'");
        intern(v);
      }
      continue;
    }
    // Constraint line: NAME(a1,...,ak)
    auto lp = line.find('(');
    auto rp = line.rfind(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp ||
        rp + 1 != line.size())
      fail("expected a constraint NAME(args)");
    Constraint c;
    c.relation = line.substr(0, lp);
    c.span = span;
    if (!valid_ident(c.relation)) fail("bad relation name");
    const RelationDef* def = inst.find_def(c.relation);
    if (!def) fail("unknown relation " + c.relation);
    std::string args = line.substr(lp + 1, rp - lp - 1);
    std::replace(args.begin(), args.end(), ',', ' ');
    for (const auto& a : split_ws(args)) {
      if (!valid_ident(a)) fail("bad argument name '" + a + "'");
      c.args.push_back(intern(a));
    }
    if (c.args.size() != def->params.size())
      throw ArityError("line " + std::to_string(lineno) + ": " + c.relation +
                       " expects " + std::to_string(def->params.size()) +
                       " arguments, got " + std::to_string(c.args.size()));
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

ThreeSat parse_dimacs_3sat(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  ThreeSat out;
  int num_clauses = -1;
  std::vector<int> pending;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (num_clauses >= 0) throw ParseError("duplicate header", {});
      std::istringstream hs(line);
      std::string p, fmt;
      if (!(hs >> p >> fmt >> out.num_vars >> num_clauses) || fmt != "cnf" ||
          out.num_vars < 0 || num_clauses < 0)
        throw ParseError("malformed DIMACS header: " + line, {});
      continue;
    }
    if (num_clauses < 0) throw ParseError("clause before header", {});
    std::istringstream cs(line);
    int lit;
    while (cs >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          throw ParseError("clause with " + std::to_string(pending.size()) +
                               " literals; exactly 3 required",
                           {});
        out.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        if (std::abs(lit) > out.num_vars)
          throw ParseError("literal " + std::to_string(lit) + " out of range",
                           {});
        pending.push_back(lit);
      }
    }
  }
  if (!pending.empty()) throw ParseError("unterminated clause", {});
  if (num_clauses < 0) throw ParseError("missing DIMACS header", {});
  if (static_cast<int>(out.clauses.size()) != num_clauses)
    throw ParseError("header promises " + std::to_string(num_clauses) +
                         " clauses, found " +
                         std::to_string(out.clauses.size()),
                     {});
  return out;
}

namespace {

void render_term(const TermExpr& t, std::ostream& os, int parent_prec) {
  using K = TermExpr::Kind;
  // Precedence: ~ (3) > | (2) > & (1).
  switch (t.kind) {
    case K::Var:
      os << t.var;
      return;
    case K::Zero:
      os << '0';
      return;
    case K::One:
      os << '1';
      return;
    case K::Complement:
      os << '~';
      render_term(t.args[0], os, 3);
      return;
    case K::Join:
    case K::Meet: {
      int prec = t.kind == K::Join ? 2 : 1;
      const char* op = t.kind == K::Join ? " | " : " & ";
      bool paren = prec < parent_prec || t.args.size() < 2;
      if (paren) os << '(';
      if (t.args.empty()) {
        os << (t.kind == K::Join ? '0' : '1');
      } else {
        // Children of the same kind get parentheses so nesting survives
        // the reparse (which otherwise flattens to one n-ary node).
        for (size_t i = 0; i < t.args.size(); ++i) {
          if (i) os << op;
          render_term(t.args[i], os, prec + 1);
        }
      }
      if (paren) os << ')';
      return;
    }
  }
}

void render_formula(const SurfaceFormula& f, std::ostream& os,
                    int parent_prec) {
  using K = SurfaceFormula::Kind;
  switch (f.kind) {
    case K::Atom:
      render_term(f.lhs, os, 0);
      os << (f.equal ? " == " : " != ");
      render_term(f.rhs, os, 0);
      return;
    case K::Not:
      os << "not ";
      if (f.children[0].kind == K::Atom) {
        os << '(';
        render_formula(f.children[0], os, 0);
        os << ')';
      } else {
        render_formula(f.children[0], os, 3);
      }
      return;
    case K::And:
    case K::Or: {
      int prec = f.kind == K::And ? 2 : 1;
      const char* op = f.kind == K::And ? " and " : " or ";
      bool paren = prec < parent_prec || f.children.size() < 2;
      if (paren) os << '(';
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) os << op;
        // Atoms self-delimit only up to their own operators; parenthesize
        // them under connectives for unambiguous reparsing.
        bool ap = f.children[i].kind == K::Atom;
        if (ap) os << '(';
        render_formula(f.children[i], os, ap ? 0 : prec + 1);
        if (ap) os << ')';
      }
      if (paren) os << ')';
      return;
    }
  }
}

TermExpr term_to_expr(const Term& t, const std::vector<std::string>& vars) {
  if (t.empty()) return tone();
  std::vector<TermExpr> factors;
  for (const auto& c : t) {
    if (c.empty()) {
      factors.push_back(tzero());
      continue;
    }
    std::vector<TermExpr> lits;
    for (const auto& l : c) {
      TermExpr v = tvar(vars[l.var]);
      lits.push_back(l.positive ? std::move(v) : tcomp(std::move(v)));
    }
    factors.push_back(lits.size() == 1 ? std::move(lits[0])
                                       : tjoin(std::move(lits)));
  }
  return factors.size() == 1 ? std::move(factors[0])
                             : tmeet(std::move(factors));
}

}  // namespace

std::string render(const TermExpr& t) {
  std::ostringstream os;
  render_term(t, os, 0);
  return os.str();
}

std::string render(const SurfaceFormula& f) {
  std::ostringstream os;
  render_formula(f, os, 0);
  return os.str();
}

std::string render(const ClausalFormula& f) {
  if (f.clauses.empty()) return "true";
  std::ostringstream os;
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    if (i) os << " and ";
    const OuterClause& cl = f.clauses[i];
    if (cl.empty()) {
      os << "false";
      continue;
    }
    if (f.clauses.size() > 1 && cl.size() > 1) os << '(';
    for (size_t j = 0; j < cl.size(); ++j) {
      if (j) os << " or ";
      os << '(';
      render_term(term_to_expr(cl[j].term, f.vars), os, 0);
      os << (cl[j].positive ? " == 1" : " != 1") << ')';
    }
    if (f.clauses.size() > 1 && cl.size() > 1) os << ')';
  }
  return os.str();
}

std::string render(const CspInstance& inst) {
  std::ostringstream os;
  std::vector<std::string> builtins;
  for (const auto& d : inst.defs) {
    if (d.builtin) {
      builtins.push_back(d.name);
      continue;
    }
    os << "rel " << d.name << '(';
    for (size_t i = 0; i < d.params.size(); ++i) {
      if (i) os << ", ";
      os << d.params[i];
    }
    os << ") := " << render(d.body) << '\n';
  }
  if (!builtins.empty()) {
    os << "builtin";
    for (const auto& n : builtins) os << ' ' << n;
    os << '\n';
  }
  if (!inst.vars.empty()) {
    os << "var";
    for (const auto& v : inst.vars) os << ' ' << v;
    os << '\n';
  }
  for (const auto& c : inst.constraints) {
    os << c.relation << '(';
    for (size_t i = 0; i < c.args.size(); ++i) {
      if (i) os << ", ";
      os << inst.vars[c.args[i]];
    }
    os << ")\n";
  }
  return os.str();
}

std::string encode_witness(const BlockModel& m) {
  nlohmann::json j;
  j["blocks"] = m.blocks;
  j["assignment"] = nlohmann::json::object();
  for (const auto& [name, blocks] : m.assignment) {
    std::vector<int> sorted = blocks;
    std::sort(sorted.begin(), sorted.end());
    j["assignment"][name] = sorted;
  }
  return j.dump(2) + "\n";
}

BlockModel decode_witness(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("witness JSON: ") + e.what(), {});
  }
  if (!j.is_object() || !j.contains("blocks") || !j.contains("assignment") ||
      !j["blocks"].is_number_integer() || !j["assignment"].is_object())
    throw ParseError("witness must be {\"blocks\": s, \"assignment\": {...}}",
                     {});
  BlockModel m;
  m.blocks = j["blocks"].get<int>();
  if (m.blocks < 1) throw ParseError("witness needs at least one block", {});
  for (const auto& [name, arr] : j["assignment"].items()) {
    if (!arr.is_array())
      throw ParseError("assignment of " + name + " must be a list", {});
    std::vector<int> blocks;
    for (const auto& v : arr) {
      if (!v.is_number_integer())
        throw ParseError("non-integer block index for " + name, {});
      int b = v.get<int>();
      if (b < 0 || b >= m.blocks)
        throw ParseError("block index " + std::to_string(b) + " for " + name +
                             " out of range",
                         {});
      blocks.push_back(b);
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    m.assignment[name] = std::move(blocks);
  }
  return m;
}

}  // namespace setcsp
