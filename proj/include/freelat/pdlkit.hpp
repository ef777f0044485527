#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "freelat/elemset.hpp"
#include "freelat/lattice.hpp"
#include "freelat/skolem.hpp"
#include "freelat/term.hpp"

namespace freelat {

// Idl(S) ordered by inclusion, or Fil(S) ordered by reverse inclusion.
struct SetLattice {
  std::vector<ElemSet> sets;
  FiniteLattice lattice;  // element i is sets[i]
  std::vector<int> principal;  // S element s -> index of its principal ideal or filter

  int index_of(ElemSet s) const;
};

inline constexpr std::size_t kDefaultSetCap = 1 << 16;

// Throws ResourceError past `cap` sets.
SetLattice ideals(const Pdl& s, std::size_t cap = kDefaultSetCap);
SetLattice filters(const Pdl& s, std::size_t cap = kDefaultSetCap);

// Sublattice of Idl(S) x Fil(S) generated by the diagonal (down s, up s).
struct PartialCompletion {
  std::vector<std::pair<ElemSet, ElemSet>> elements;
  FiniteLattice lattice;
  std::vector<int> diagonal;  // S element -> PC element
};

PartialCompletion partial_completion(const Pdl& s, std::size_t cap = kDefaultSetCap);

// Dean's solution of the word problem of FP(S). Terms are written over the
// elements of S: a variable names a generator of the source presentation or
// an element name of S.
class DeanSolver {
 public:
  explicit DeanSolver(const Pdl& s) : s_(s) {}

  bool leq(const Term& u, const Term& v);
  bool leq(int u, int v);

  // Evaluations into Idl(S) and Fil(S).
  ElemSet ideal_of(const Term& t);
  ElemSet filter_of(const Term& t);

  // Throws std::invalid_argument for an unknown variable.
  int element(const Term& var) const;

 private:
  const Pdl& s_;
  std::map<std::pair<Term, Term>, bool> memo_;
  std::map<Term, ElemSet> ideal_memo_;
  std::map<Term, ElemSet> filter_memo_;
};

bool dean_leq(const Pdl& s, const Term& u, const Term& v);
bool dean_leq(const Pdl& s, int u, int v);

}  // namespace freelat
