#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "freelat/formula.hpp"
#include "freelat/term.hpp"

namespace freelat {

// Whitman's solution of the word problem of the free lattice over the
// variables. Results are memoized per solver.
class WhitmanSolver {
 public:
  // Called once per distinct meet-versus-join query with its answer.
  using Observer = std::function<void(const Term& meet, const Term& join, bool leq)>;

  WhitmanSolver() = default;
  explicit WhitmanSolver(Observer on_meet_join) : observer_(std::move(on_meet_join)) {}

  bool leq(const Term& s, const Term& t);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::map<std::pair<Term, Term>, bool> memo_;
  Observer observer_;
};

bool free_leq(const Term& s, const Term& t);
bool free_eq(const Term& s, const Term& t);

// Variables replaced by their images; unmapped variables stay.
Term substitute(const Term& t, const std::map<std::string, Term>& subst);

// Every R+ literal holds and every R- literal fails in the free lattice after
// substitution.
bool check_assignment(const Presentation& p, const std::map<std::string, Term>& subst);

}  // namespace freelat
