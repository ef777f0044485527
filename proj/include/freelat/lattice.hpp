#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

namespace freelat {

// Finite lattice on {0..n-1} given by its order; join and meet tables are
// derived and validated at construction.
class FiniteLattice {
 public:
  // One-element lattice.
  FiniteLattice();

  // `leq` must already be a partial order (reflexive, antisymmetric,
  // transitive) in which every pair has a join and a meet. Throws
  // InvalidLattice otherwise.
  static FiniteLattice from_relation(int n, const std::vector<char>& leq);
  // Reflexive-transitive closure of the given strict relations.
  static FiniteLattice from_covers(int n, const std::vector<std::pair<int, int>>& below);

  static FiniteLattice chain(int n);
  static FiniteLattice boolean(int atoms);
  static FiniteLattice pentagon();  // 0 < b < a < 1, 0 < c < 1
  static FiniteLattice diamond();   // M3: 0 < a, b, c < 1
  static FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b);

  int size() const { return n_; }
  bool leq(int a, int b) const { return leq_[idx(a, b)] != 0; }
  int join(int a, int b) const { return join_[idx(a, b)]; }
  int meet(int a, int b) const { return meet_[idx(a, b)]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }
  int join_all(const std::vector<int>& xs) const;
  int meet_all(const std::vector<int>& xs) const;

  // Upper/lower covers.
  std::vector<int> lower_covers(int a) const;
  std::vector<int> upper_covers(int a) const;

  FiniteLattice dual() const;
  const std::vector<char>& relation() const { return leq_; }

  nlohmann::json to_json() const;
  // Requires the full order relation, reflexive pairs included.
  static FiniteLattice from_json(const nlohmann::json& j);

  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_;
  }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_ = 1;
  std::vector<char> leq_;
  std::vector<int> join_;
  std::vector<int> meet_;
  int bottom_ = 0;
  int top_ = 0;
};

struct Interval {
  int bottom;
  int top;
};

struct DoublingResult {
  FiniteLattice doubled;
  std::vector<int> lambda;  // L[I] -> L
  std::vector<int> lift0;   // L -> L[I]; (v,0) for v in I, the element itself outside I
  std::vector<int> lift1;   // (v,1) for v in I, the element itself outside I
  std::vector<char> in_interval;  // indexed by L
};

// Day's doubling L[I]. Elements are listed in L's order, with (v,0), (v,1)
// adjacent for v in I. Throws InvalidInterval when bottom is not below top.
DoublingResult double_interval(const FiniteLattice& l, Interval i);

std::vector<int> join_irreducibles(const FiniteLattice& l);
std::vector<int> meet_irreducibles(const FiniteLattice& l);
// Join covers are nonempty, so the bottom counts as join prime.
std::vector<int> join_primes(const FiniteLattice& l);
std::vector<int> meet_primes(const FiniteLattice& l);
bool is_join_prime(const FiniteLattice& l, int a);

// Nontrivial join covers of p that are minimal under refinement, each as a
// sorted antichain of join irreducibles.
std::vector<std::vector<int>> minimal_join_covers(const FiniteLattice& l, int p);

// Least k with a in D_k(L); nullopt when a never enters D(L).
std::vector<std::optional<int>> d_rank(const FiniteLattice& l);
bool is_lower_bounded(const FiniteLattice& l);
bool is_upper_bounded(const FiniteLattice& l);
bool is_bounded(const FiniteLattice& l);

struct WhitmanReport {
  bool holds = true;
  std::vector<Interval> failures;  // [a&b, c|d] for each failing quadruple, deduplicated
};

WhitmanReport whitman_W(const FiniteLattice& l);
bool is_distributive(const FiniteLattice& l);

struct Sublattice {
  FiniteLattice lattice;
  std::vector<int> embed;  // sublattice element -> element of the parent
  std::vector<int> index;  // parent element -> sublattice element or -1
};

// Closure of `seed` under binary join and meet, listed in parent order.
Sublattice generated_sublattice(const FiniteLattice& l, const std::vector<int>& seed);

// True when `f` maps joins to joins and meets to meets.
bool is_homomorphism(const FiniteLattice& from, const FiniteLattice& to, const std::vector<int>& f);

struct CatalogEntry {
  FiniteLattice lattice;
  bool bounded;
  bool whitman;
  bool distributive;
};

// Every lattice with at most `max_size` (<= 8) elements, one per isomorphism
// class, ordered by size. Computed once and cached.
const std::vector<CatalogEntry>& lattice_catalog(int max_size = 8);

}  // namespace freelat
