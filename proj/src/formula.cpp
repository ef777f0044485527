#include "freelat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "freelat/errors.hpp"

namespace freelat {

// ---------------------------------------------------------------------------
// Construction helpers

void Presentation::normalize() {
  std::sort(rplus.begin(), rplus.end());
  rplus.erase(std::unique(rplus.begin(), rplus.end()), rplus.end());
  std::sort(rminus.begin(), rminus.end());
  rminus.erase(std::unique(rminus.begin(), rminus.end()), rminus.end());
}

Formula Formula::make_atom(AtomKind k, Term l, Term r) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = k;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return f;
}

Formula Formula::make_not(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.operands.push_back(std::move(g));
  return f;
}

Formula Formula::make_and(std::vector<Formula> fs) {
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.kind = Kind::And;
  f.operands = std::move(fs);
  return f;
}

Formula Formula::make_or(std::vector<Formula> fs) {
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.kind = Kind::Or;
  f.operands = std::move(fs);
  return f;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Formula::Kind::Atom) {
    return a.atom == b.atom && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  return a.operands == b.operands;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Exists, Forall, And, Or, Not, Le, NLe, Eq, Bar, Amp, LParen, RParen, Colon, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int l = line;
    const int cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      std::string word(src.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "exists") kind = Tok::Exists;
      else if (word == "forall") kind = Tok::Forall;
      else if (word == "and") kind = Tok::And;
      else if (word == "or") kind = Tok::Or;
      else if (word == "not") kind = Tok::Not;
      out.push_back({kind, std::move(word), l, cl});
      advance(j - i);
      continue;
    }
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    if (starts("!<=")) {
      out.push_back({Tok::NLe, "!<=", l, cl});
      advance(3);
    } else if (starts("<=")) {
      out.push_back({Tok::Le, "<=", l, cl});
      advance(2);
    } else if (c == '=') {
      out.push_back({Tok::Eq, "=", l, cl});
      advance(1);
    } else if (c == '|') {
      out.push_back({Tok::Bar, "|", l, cl});
      advance(1);
    } else if (c == '&') {
      out.push_back({Tok::Amp, "&", l, cl});
      advance(1);
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", l, cl});
      advance(1);
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", l, cl});
      advance(1);
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":", l, cl});
      advance(1);
    } else {
      throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Sentence sentence() {
    Sentence s;
    if (peek().kind == Tok::Exists) {
      s.quantifier = Quantifier::Exists;
    } else if (peek().kind == Tok::Forall) {
      s.quantifier = Quantifier::Forall;
    } else {
      fail("expected 'exists' or 'forall'");
    }
    ++pos_;
    s.vars = binder();
    s.matrix = expr();
    expect(Tok::End, "end of input");
    check_declared(s.vars);
    return s;
  }

  Presentation presentation() {
    Presentation p;
    std::optional<std::vector<std::string>> declared;
    if (peek().kind == Tok::Exists) {
      ++pos_;
      declared = binder();
    }
    std::vector<Formula> atoms;
    atoms.push_back(comparison());
    while (peek().kind == Tok::And) {
      ++pos_;
      atoms.push_back(comparison());
    }
    expect(Tok::End, "end of input");
    if (declared) {
      check_declared(*declared);
      p.vars = *declared;
    } else {
      p.vars = order_of_use_;
    }
    for (const auto& a : atoms) {
      switch (a.atom) {
        case AtomKind::Leq: p.rplus.push_back({LiteralKind::Leq, a.lhs, a.rhs}); break;
        case AtomKind::NLeq: p.rminus.push_back({LiteralKind::NLeq, a.lhs, a.rhs}); break;
        case AtomKind::Eq:
          p.rplus.push_back({LiteralKind::Leq, a.lhs, a.rhs});
          p.rplus.push_back({LiteralKind::Leq, a.rhs, a.lhs});
          break;
      }
    }
    p.normalize();
    return p;
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, what + ", found " + describe(t));
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }

  std::vector<std::string> binder() {
    std::vector<std::string> vars;
    if (peek().kind != Tok::Ident) fail("expected a variable name");
    while (peek().kind == Tok::Ident) {
      const Token& t = peek();
      if (std::find(vars.begin(), vars.end(), t.text) != vars.end()) {
        throw ParseError(t.line, t.column, "variable '" + t.text + "' declared twice");
      }
      vars.push_back(t.text);
      ++pos_;
    }
    expect(Tok::Colon, "':'");
    return vars;
  }

  void check_declared(const std::vector<std::string>& vars) const {
    for (const auto& [name, tok] : first_use_) {
      if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
        throw ParseError(tok.line, tok.column, "undeclared variable '" + name + "'");
      }
    }
  }

  Formula expr() {
    std::vector<Formula> parts;
    parts.push_back(conj());
    while (peek().kind == Tok::Or) {
      ++pos_;
      parts.push_back(conj());
    }
    return Formula::make_or(std::move(parts));
  }

  Formula conj() {
    std::vector<Formula> parts;
    parts.push_back(neg());
    while (peek().kind == Tok::And) {
      ++pos_;
      parts.push_back(neg());
    }
    return Formula::make_and(std::move(parts));
  }

  Formula neg() {
    if (peek().kind == Tok::Not) {
      ++pos_;
      return Formula::make_not(neg());
    }
    return atom();
  }

  // A parenthesis may open either a term or a sub-formula; try the comparison
  // reading first and fall back, reporting whichever attempt got further.
  Formula atom() {
    if (peek().kind != Tok::LParen) return comparison();
    const std::size_t start = pos_;
    try {
      return comparison();
    } catch (const ParseError& as_term) {
      const std::size_t reached = pos_;
      pos_ = start;
      try {
        ++pos_;
        Formula f = expr();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError& as_expr) {
        if (reached > pos_) throw as_term;
        throw;
      }
    }
  }

  Formula comparison() {
    Term lhs = term();
    AtomKind k;
    switch (peek().kind) {
      case Tok::Le: k = AtomKind::Leq; break;
      case Tok::NLe: k = AtomKind::NLeq; break;
      case Tok::Eq: k = AtomKind::Eq; break;
      default: fail("expected '<=', '!<=' or '='");
    }
    ++pos_;
    Term rhs = term();
    return Formula::make_atom(k, std::move(lhs), std::move(rhs));
  }

  Term term() {
    std::vector<Term> parts;
    parts.push_back(mterm());
    while (peek().kind == Tok::Bar) {
      ++pos_;
      parts.push_back(mterm());
    }
    return parts.size() == 1 ? parts.front() : Term::join(std::move(parts));
  }

  Term mterm() {
    std::vector<Term> parts;
    parts.push_back(factor());
    while (peek().kind == Tok::Amp) {
      ++pos_;
      parts.push_back(factor());
    }
    return parts.size() == 1 ? parts.front() : Term::meet(std::move(parts));
  }

  Term factor() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      ++pos_;
      if (!first_use_.count(t.text)) {
        first_use_.emplace(t.text, t);
        order_of_use_.push_back(t.text);
      }
      return Term::var(t.text);
    }
    if (t.kind == Tok::LParen) {
      ++pos_;
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail("expected a variable or '('");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Token> first_use_;
  std::vector<std::string> order_of_use_;
};

}  // namespace

Sentence parse_sentence(std::string_view text) { return Parser(text).sentence(); }

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }

Presentation parse_presentation(std::string_view text) { return Parser(text).presentation(); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Literal& l) {
  return to_string(l.lhs) + (l.kind == LiteralKind::Leq ? " <= " : " !<= ") + to_string(l.rhs);
}

namespace {

const char* atom_op(AtomKind k) {
  switch (k) {
    case AtomKind::Leq: return " <= ";
    case AtomKind::NLeq: return " !<= ";
    case AtomKind::Eq: return " = ";
  }
  return " ? ";
}

// Precedence: or < and < not < atom.
std::string print(const Formula& f, int context) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return to_string(f.lhs) + atom_op(f.atom) + to_string(f.rhs);
    case Formula::Kind::Not:
      return "not " + print(f.operands.front(), 2);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const bool is_or = f.kind == Formula::Kind::Or;
      const int own = is_or ? 0 : 1;
      std::string out;
      for (std::size_t i = 0; i < f.operands.size(); ++i) {
        if (i) out += is_or ? " or " : " and ";
        out += print(f.operands[i], own + 1);
      }
      return context > own ? "(" + out + ")" : out;
    }
  }
  return {};
}

}  // namespace

std::string to_string(const Formula& f) { return print(f, 0); }

std::string to_string(const Sentence& s) {
  std::string out = s.quantifier == Quantifier::Exists ? "exists" : "forall";
  for (const auto& v : s.vars) out += " " + v;
  return out + ": " + to_string(s.matrix);
}

std::string to_string(const Presentation& p) {
  std::string out = "exists";
  for (const auto& v : p.vars) out += " " + v;
  out += ":";
  bool first = true;
  for (const auto* list : {&p.rplus, &p.rminus}) {
    for (const auto& l : *list) {
      out += first ? " " : " and ";
      first = false;
      out += to_string(l);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

using Conjunction = std::vector<Literal>;

std::vector<Conjunction> dnf(const Formula& f, bool negated, std::size_t cap) {
  auto check = [cap](std::size_t n) {
    if (n > cap) {
      throw ResourceError("DNF expansion exceeds " + std::to_string(cap) + " disjuncts");
    }
  };
  switch (f.kind) {
    case Formula::Kind::Atom: {
      const Literal le{LiteralKind::Leq, f.lhs, f.rhs};
      const Literal nle{LiteralKind::NLeq, f.lhs, f.rhs};
      switch (f.atom) {
        case AtomKind::Leq: return {{negated ? nle : le}};
        case AtomKind::NLeq: return {{negated ? le : nle}};
        case AtomKind::Eq: {
          const Literal back{LiteralKind::Leq, f.rhs, f.lhs};
          const Literal nback{LiteralKind::NLeq, f.rhs, f.lhs};
          if (negated) return {{nle}, {nback}};
          return {{le, back}};
        }
      }
      return {};
    }
    case Formula::Kind::Not:
      return dnf(f.operands.front(), !negated, cap);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const bool conjunctive = (f.kind == Formula::Kind::And) != negated;
      if (!conjunctive) {
        std::vector<Conjunction> out;
        for (const auto& g : f.operands) {
          auto part = dnf(g, negated, cap);
          out.insert(out.end(), part.begin(), part.end());
          check(out.size());
        }
        return out;
      }
      std::vector<Conjunction> acc{{}};
      for (const auto& g : f.operands) {
        const auto part = dnf(g, negated, cap);
        check(acc.size() * part.size());
        std::vector<Conjunction> next;
        next.reserve(acc.size() * part.size());
        for (const auto& a : acc) {
          for (const auto& b : part) {
            Conjunction c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

Formula negate(Formula f) { return Formula::make_not(std::move(f)); }

Formula dual_formula(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) {
    return Formula::make_atom(f.atom, dual(f.rhs), dual(f.lhs));
  }
  Formula g = f;
  for (auto& op : g.operands) op = dual_formula(op);
  return g;
}

Literal dual_literal(const Literal& l) { return {l.kind, dual(l.rhs), dual(l.lhs)}; }

}  // namespace

std::vector<Presentation> to_dnf(const Sentence& s, std::size_t max_disjuncts) {
  if (s.quantifier != Quantifier::Exists) {
    throw std::invalid_argument("to_dnf expects an existential sentence; dualize first");
  }
  std::vector<Presentation> out;
  for (auto& conj : dnf(s.matrix, false, max_disjuncts)) {
    Presentation p;
    p.vars = s.vars;
    for (auto& l : conj) {
      (l.kind == LiteralKind::Leq ? p.rplus : p.rminus).push_back(std::move(l));
    }
    p.normalize();
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

Sentence dualize(const Sentence& s) {
  Sentence d;
  d.quantifier = s.quantifier == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
  d.vars = s.vars;
  d.matrix = negate(s.matrix);
  return d;
}

Sentence dual_sentence(const Sentence& s) {
  Sentence d = s;
  d.matrix = dual_formula(s.matrix);
  return d;
}

Presentation dual_presentation(const Presentation& p) {
  Presentation d;
  d.vars = p.vars;
  for (const auto& l : p.rplus) d.rplus.push_back(dual_literal(l));
  for (const auto& l : p.rminus) d.rminus.push_back(dual_literal(l));
  d.normalize();
  return d;
}

}  // namespace freelat
