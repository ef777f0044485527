#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "freelat/term.hpp"

namespace freelat {

enum class LiteralKind { Leq, NLeq };

struct Literal {
  LiteralKind kind;
  Term lhs;
  Term rhs;

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

// Generators X, required inclusions R+ and required non-inclusions R-.
// Literal lists are kept sorted and duplicate free.
struct Presentation {
  std::vector<std::string> vars;
  std::vector<Literal> rplus;
  std::vector<Literal> rminus;

  void normalize();
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

enum class AtomKind { Leq, NLeq, Eq };

// Quantifier-free matrix: atoms combined with not/and/or.
struct Formula {
  enum class Kind { Atom, Not, And, Or };

  Kind kind = Kind::Atom;
  AtomKind atom = AtomKind::Leq;
  Term lhs = Term::var("_");
  Term rhs = Term::var("_");
  std::vector<Formula> operands;

  static Formula make_atom(AtomKind k, Term l, Term r);
  static Formula make_not(Formula f);
  static Formula make_and(std::vector<Formula> fs);
  static Formula make_or(std::vector<Formula> fs);

  friend bool operator==(const Formula& a, const Formula& b);
};

enum class Quantifier { Exists, Forall };

struct Sentence {
  Quantifier quantifier = Quantifier::Exists;
  std::vector<std::string> vars;
  Formula matrix;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

Sentence parse_sentence(std::string_view text);
Term parse_term(std::string_view text);

// A conjunction of atoms, optionally prefixed by `exists vars:`. Without the
// prefix the generators are the variables in order of first occurrence.
Presentation parse_presentation(std::string_view text);

std::string to_string(const Literal& l);
std::string to_string(const Formula& f);
std::string to_string(const Sentence& s);
std::string to_string(const Presentation& p);

// Disjuncts of the prenex DNF of an existential sentence. Throws
// ResourceError when more than `max_disjuncts` would be produced.
std::vector<Presentation> to_dnf(const Sentence& s, std::size_t max_disjuncts = 4096);

// Flips the quantifier and negates the matrix. The caller negates the verdict.
Sentence dualize(const Sentence& s);

// Order dual: join and meet swapped, every inequality reversed.
Sentence dual_sentence(const Sentence& s);
Presentation dual_presentation(const Presentation& p);

}  // namespace freelat
