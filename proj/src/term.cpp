#include "freelat/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace freelat {

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>(Node{TermKind::Var, std::move(name), {}, 1, 0});
  return Term(std::move(node));
}

Term Term::join(std::vector<Term> children) {
  return make(TermKind::Join, std::move(children));
}

Term Term::meet(std::vector<Term> children) {
  return make(TermKind::Meet, std::move(children));
}

Term Term::make(TermKind kind, std::vector<Term> children) {
  if (kind == TermKind::Var) {
    throw std::invalid_argument("Term::make: use Term::var for variables");
  }
  if (children.empty()) {
    throw std::invalid_argument("Term::make: join/meet needs at least one child");
  }
  std::vector<Term> flat;
  flat.reserve(children.size());
  for (auto& c : children) {
    if (c.kind() == kind) {
      flat.insert(flat.end(), c.children().begin(), c.children().end());
    } else {
      flat.push_back(std::move(c));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.size() == 1) return flat.front();
  return build(kind, std::move(flat));
}

Term Term::build(TermKind kind, std::vector<Term> children) {
  std::size_t size = 1;
  int depth = 0;
  for (const auto& c : children) {
    size += c.size();
    depth = std::max(depth, c.depth() + 1);
  }
  auto node = std::make_shared<Node>(Node{kind, {}, std::move(children), size, depth});
  return Term(std::move(node));
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_var()) return a.name() <=> b.name();
  const auto& ca = a.children();
  const auto& cb = b.children();
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = ca[i] <=> cb[i]; c != 0) return c;
  }
  return ca.size() <=> cb.size();
}

Term canonical(const Term& t) {
  if (t.is_var()) return t;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(canonical(c));
  return Term::make(t.kind(), std::move(kids));
}

Term dual(const Term& t) {
  if (t.is_var()) return t;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(dual(c));
  return Term::make(t.is_join() ? TermKind::Meet : TermKind::Join, std::move(kids));
}

void collect_subterms(const Term& t, std::set<Term>& out) {
  if (!out.insert(t).second) return;
  for (const auto& c : t.children()) collect_subterms(c, out);
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& c : t.children()) collect_variables(c, out);
}

std::string to_string(const Term& t) {
  if (t.is_var()) return t.name();
  const char* op = t.is_join() ? "|" : "&";
  std::string out;
  bool first = true;
  for (const auto& c : t.children()) {
    if (!first) out += op;
    first = false;
    if (c.is_var()) {
      out += c.name();
    } else {
      out += '(';
      out += to_string(c);
      out += ')';
    }
  }
  return out;
}

}  // namespace freelat
