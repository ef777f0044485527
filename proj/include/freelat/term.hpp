#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace freelat {

enum class TermKind { Var, Join, Meet };

// Immutable lattice term in canonical form: joins and meets are n-ary,
// flattened, with sorted and deduplicated children. A join or meet that would
// end up with a single child collapses to that child. Copies share structure.
class Term {
 public:
  static Term var(std::string name);
  static Term join(std::vector<Term> children);
  static Term meet(std::vector<Term> children);
  static Term make(TermKind kind, std::vector<Term> children);

  TermKind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == TermKind::Var; }
  bool is_join() const { return node_->kind == TermKind::Join; }
  bool is_meet() const { return node_->kind == TermKind::Meet; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& children() const { return node_->children; }

  std::size_t size() const { return node_->size; }
  int depth() const { return node_->depth; }

  // Stable address of the shared node; usable as a memo key while the term
  // is alive.
  const void* id() const { return node_.get(); }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::vector<Term> children;
    std::size_t size;
    int depth;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term build(TermKind kind, std::vector<Term> children);

  std::shared_ptr<const Node> node_;
};

// Rebuilds `t` bottom-up through the canonicalizing constructors.
Term canonical(const Term& t);

// Join/meet swapped everywhere.
Term dual(const Term& t);

// All subterms of `t`, including `t` itself.
void collect_subterms(const Term& t, std::set<Term>& out);
void collect_variables(const Term& t, std::set<std::string>& out);

// Compact text form that the parser reads back to the same term, e.g.
// `x|(y&z)`.
std::string to_string(const Term& t);

}  // namespace freelat
