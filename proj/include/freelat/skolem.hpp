#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freelat/elemset.hpp"
#include "freelat/formula.hpp"
#include "freelat/term.hpp"

namespace freelat {

// A join or meet relation: `result` is the join (meet) of `args`.
struct OpTriple {
  std::vector<int> args;
  int result;
};

// Skolem's closure structure over a finite universe of terms. The n-ary
// joins/meets hold the formal operations of the universe's terms.
struct RelationalQuasilattice {
  std::vector<Term> universe;
  std::map<Term, int> index;
  std::vector<std::vector<char>> leq;
  std::vector<OpTriple> joins;
  std::vector<OpTriple> meets;

  int size() const { return static_cast<int>(universe.size()); }
  int index_of(const Term& t) const;
  bool le(int a, int b) const { return leq[a][b] != 0; }
  bool le(const Term& a, const Term& b) const;
  bool equivalent(int a, int b) const { return le(a, b) && le(b, a); }
};

// All declared variables, all subterms of R+ terms, and all subterms of
// u, v and u|v for every u !<= v in R-. Sorted in term order.
std::vector<Term> subterm_universe(const Presentation& p);

struct CloseOptions {
  std::size_t max_rounds = 10000;
};

// Least relational quasilattice on `universe` containing the R+ pairs and the
// formal join/meet triples. Each R- pair u !<= v also contributes the true
// relation u|v = join{u, v}. Throws ResourceError past `max_rounds`.
RelationalQuasilattice close(const std::vector<Term>& universe, const std::vector<Literal>& rplus,
                             const std::vector<Literal>& rminus = {}, const CloseOptions& opts = {});

struct ConsistencyResult {
  bool consistent = true;
  std::optional<Literal> violated;  // first R- literal forced to hold
};

ConsistencyResult consistent(const RelationalQuasilattice& q, const std::vector<Literal>& rminus);

// A non-inclusion u !<= v of R- as elements; uv is the element u|v.
struct NegPair {
  int u;
  int v;
  int uv;
  Literal source;
};

struct PdlOp {
  ElemSet args;  // antichain, at least two elements
  int result;
};

// Partially defined lattice with negations: classes of the closed universe
// under mutual inclusion, the induced order, and the defined operations.
class Pdl {
 public:
  int size() const { return static_cast<int>(names_.size()); }
  ElemSet all() const { return first_n(size()); }

  bool leq(int a, int b) const { return contains(up_[a], b); }
  ElemSet up(int a) const { return up_[a]; }
  ElemSet down(int a) const { return down_[a]; }

  const std::vector<PdlOp>& joins() const { return joins_; }
  const std::vector<PdlOp>& meets() const { return meets_; }
  std::optional<int> join_of(ElemSet args) const;
  std::optional<int> meet_of(ElemSet args) const;

  // Generated ideal (down-closed, closed under defined joins) and filter.
  ElemSet ideal_closure(ElemSet seed) const;
  ElemSet filter_closure(ElemSet seed) const;
  bool is_ideal(ElemSet s) const { return ideal_closure(s) == s; }
  bool is_filter(ElemSet s) const { return filter_closure(s) == s; }

  const std::vector<NegPair>& negs() const { return negs_; }
  const std::map<std::string, int>& gens() const { return gens_; }
  const std::string& name(int e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Term>& members(int e) const { return members_[e]; }
  const Term& representative(int e) const { return members_[e].front(); }
  std::optional<int> element_of(const Term& t) const;
  bool formally_join(int e) const;
  bool formally_meet(int e) const;

  // Derived inclusions between elements (the order relation, S+).
  std::vector<std::pair<int, int>> splus() const;

  const Presentation& source() const { return source_; }
  const RelationalQuasilattice& quasilattice() const { return rq_; }

  // Elements named after a declared variable, in element order.
  std::vector<int> named_elements() const;

 private:
  friend Pdl quotient(const RelationalQuasilattice& q, const Presentation& p);

  Presentation source_;
  RelationalQuasilattice rq_;
  std::vector<int> class_of_;  // universe index -> element
  std::vector<std::vector<Term>> members_;
  std::vector<std::string> names_;
  std::vector<bool> named_by_var_;
  std::vector<ElemSet> up_;
  std::vector<ElemSet> down_;
  std::vector<PdlOp> joins_;
  std::vector<PdlOp> meets_;
  std::map<ElemSet, int> join_index_;
  std::map<ElemSet, int> meet_index_;
  std::map<std::string, int> gens_;
  std::vector<NegPair> negs_;
};

// Throws InconsistentPresentation when some R- pair is forced, and
// ResourceError when the quotient exceeds kMaxPdlElements.
Pdl quotient(const RelationalQuasilattice& q, const Presentation& p);

// subterm_universe + close + consistent + quotient.
Pdl build_pdl(const Presentation& p, const CloseOptions& opts = {});

// Word problem for the lattice presented by S: re-runs the closure with
// u !<= v adjoined and reports whether it is forced.
bool skolem_wp(const Pdl& s, const Term& u, const Term& v);
bool skolem_wp(const Pdl& s, int u, int v);

}  // namespace freelat
