#pragma once

// Shared helpers for the test binaries: example loading, evaluation of terms
// and formulas in finite lattices, brute-force model search, random terms.

#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "freelat/formula.hpp"
#include "freelat/lattice.hpp"
#include "freelat/partition.hpp"
#include "freelat/skolem.hpp"
#include "freelat/standardize.hpp"
#include "freelat/term.hpp"

namespace testing {

using freelat::FiniteLattice;
using freelat::Formula;
using freelat::Literal;
using freelat::LiteralKind;
using freelat::Presentation;
using freelat::Sentence;
using freelat::Term;

inline std::string data_path(const std::string& name) { return std::string(FREELAT_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Sentence example_sentence(int k) {
  return freelat::parse_sentence(read_file(data_path("example" + std::to_string(k) + ".txt")));
}

inline Presentation example_presentation(int k) { return freelat::to_dnf(example_sentence(k)).at(0); }

struct CorpusEntry {
  std::string text;
  bool expected;  // expected answer of the sentence
};

// The five examples followed by tests/data/regression.txt, whose lines are
// `TRUE|FALSE <tab> sentence`; `#` starts a comment line.
inline std::vector<CorpusEntry> regression_corpus() {
  std::vector<CorpusEntry> out;
  const bool example_answers[] = {true, false, true, false, true};
  for (int k = 1; k <= 5; ++k) {
    std::string text = read_file(data_path("example" + std::to_string(k) + ".txt"));
    for (char& c : text) {
      if (c == '\n') c = ' ';
    }
    out.push_back({text, example_answers[k - 1]});
  }
  std::istringstream in(read_file(data_path("regression.txt")));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::runtime_error("bad corpus line: " + line);
    out.push_back({line.substr(tab + 1), line.substr(0, tab) == "TRUE"});
  }
  return out;
}

using Assignment = std::map<std::string, int>;

inline int eval(const FiniteLattice& l, const Term& t, const Assignment& a) {
  if (t.is_var()) return a.at(t.name());
  int r = t.is_join() ? l.bottom() : l.top();
  for (const auto& c : t.children()) r = t.is_join() ? l.join(r, eval(l, c, a)) : l.meet(r, eval(l, c, a));
  return r;
}

inline bool holds(const FiniteLattice& l, const Literal& lit, const Assignment& a) {
  const bool le = l.leq(eval(l, lit.lhs, a), eval(l, lit.rhs, a));
  return lit.kind == LiteralKind::Leq ? le : !le;
}

inline bool eval(const FiniteLattice& l, const Formula& f, const Assignment& a) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      const int x = eval(l, f.lhs, a);
      const int y = eval(l, f.rhs, a);
      if (f.atom == freelat::AtomKind::Leq) return l.leq(x, y);
      if (f.atom == freelat::AtomKind::NLeq) return !l.leq(x, y);
      return x == y;
    }
    case Formula::Kind::Not:
      return !eval(l, f.operands[0], a);
    case Formula::Kind::And:
      for (const auto& g : f.operands) {
        if (!eval(l, g, a)) return false;
      }
      return true;
    case Formula::Kind::Or:
      for (const auto& g : f.operands) {
        if (eval(l, g, a)) return true;
      }
      return false;
  }
  return false;
}

inline bool satisfies(const FiniteLattice& l, const Presentation& p, const Assignment& a) {
  for (const auto& lit : p.rplus) {
    if (!holds(l, lit, a)) return false;
  }
  for (const auto& lit : p.rminus) {
    if (!holds(l, lit, a)) return false;
  }
  return true;
}

// Backtracking search over L^X; literals are checked as soon as all their
// variables are assigned.
inline std::optional<Assignment> find_model(const FiniteLattice& l, const Presentation& p) {
  std::vector<Literal> lits = p.rplus;
  lits.insert(lits.end(), p.rminus.begin(), p.rminus.end());
  std::vector<std::vector<Literal>> ready(p.vars.size());
  for (const auto& lit : lits) {
    std::set<std::string> vs;
    freelat::collect_variables(lit.lhs, vs);
    freelat::collect_variables(lit.rhs, vs);
    std::size_t last = 0;
    for (std::size_t i = 0; i < p.vars.size(); ++i) {
      if (vs.count(p.vars[i])) last = i;
    }
    ready[last].push_back(lit);
  }
  Assignment a;
  auto go = [&](auto&& self, std::size_t i) -> bool {
    if (i == p.vars.size()) return true;
    for (int x = 0; x < l.size(); ++x) {
      a[p.vars[i]] = x;
      bool ok = true;
      for (const auto& lit : ready[i]) {
        if (!holds(l, lit, a)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, i + 1)) return true;
    }
    a.erase(p.vars[i]);
    return false;
  };
  if (p.vars.empty()) return satisfies(l, p, a) ? std::optional<Assignment>(a) : std::nullopt;
  if (go(go, 0)) return a;
  return std::nullopt;
}

inline Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth,
                        bool joins_only = false) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (depth == 0 || coin(rng) == 0) {
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    return Term::var(vars[pick(rng)]);
  }
  std::uniform_int_distribution<int> arity(2, 3);
  std::vector<Term> children;
  const int k = arity(rng);
  for (int i = 0; i < k; ++i) children.push_back(random_term(rng, vars, depth - 1, joins_only));
  const bool join = joins_only || coin(rng) == 1;
  return join ? Term::join(std::move(children)) : Term::meet(std::move(children));
}

// Same blocks, ignoring block order and order within blocks.
inline bool same_partition(const freelat::Pdl& s, const freelat::Partition& p, const std::string& bracket) {
  const auto named = s.named_elements();
  std::vector<std::string> names;
  for (int e : named) names.push_back(s.name(e));
  return p.restrict_to(named) == freelat::Partition::parse_bracket(bracket, names);
}

}  // namespace testing

namespace testing {

// The single standardized branch of example k.
inline freelat::Pdl example_pdl(int k) {
  const auto branches = freelat::standardize(example_presentation(k));
  if (branches.size() != 1) throw std::runtime_error("example has more than one branch");
  return freelat::build_pdl(branches[0]);
}

}  // namespace testing
