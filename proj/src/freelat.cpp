#include "freelat/freelat.hpp"

#include <algorithm>

namespace freelat {

bool WhitmanSolver::leq(const Term& s, const Term& t) {
  if (s == t) return true;
  auto key = std::make_pair(s, t);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const auto& sc = s.children();
  const auto& tc = t.children();
  auto some_s = [&] { return std::any_of(sc.begin(), sc.end(), [&](const Term& c) { return leq(c, t); }); };
  auto some_t = [&] { return std::any_of(tc.begin(), tc.end(), [&](const Term& c) { return leq(s, c); }); };
  bool r = false;
  if (s.is_join()) {
    r = std::all_of(sc.begin(), sc.end(), [&](const Term& c) { return leq(c, t); });
  } else if (t.is_meet()) {
    r = std::all_of(tc.begin(), tc.end(), [&](const Term& c) { return leq(s, c); });
  } else if (s.is_var() && t.is_var()) {
    r = false;  // distinct generators
  } else if (s.is_var()) {
    r = some_t();  // generators are join prime
  } else if (t.is_var()) {
    r = some_s();  // and meet prime
  } else {
    r = some_s() || some_t();  // (W)
    if (observer_) observer_(s, t, r);
  }
  memo_.emplace(std::move(key), r);
  return r;
}

bool free_leq(const Term& s, const Term& t) { return WhitmanSolver().leq(s, t); }

bool free_eq(const Term& s, const Term& t) {
  WhitmanSolver w;
  return w.leq(s, t) && w.leq(t, s);
}

Term substitute(const Term& t, const std::map<std::string, Term>& subst) {
  if (t.is_var()) {
    auto it = subst.find(t.name());
    return it == subst.end() ? t : it->second;
  }
  std::vector<Term> children;
  for (const auto& c : t.children()) children.push_back(substitute(c, subst));
  return Term::make(t.kind(), std::move(children));
}

bool check_assignment(const Presentation& p, const std::map<std::string, Term>& subst) {
  WhitmanSolver w;
  for (const auto& l : p.rplus) {
    if (!w.leq(substitute(l.lhs, subst), substitute(l.rhs, subst))) return false;
  }
  for (const auto& l : p.rminus) {
    if (w.leq(substitute(l.lhs, subst), substitute(l.rhs, subst))) return false;
  }
  return true;
}

}  // namespace freelat
