#include "freelat/pdlkit.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "freelat/errors.hpp"

namespace freelat {

int SetLattice::index_of(ElemSet s) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), s);
  return it != sets.end() && *it == s ? static_cast<int>(it - sets.begin()) : -1;
}

namespace {

template <class Close>
SetLattice enumerate(const Pdl& s, std::size_t cap, bool reverse, Close&& closure) {
  std::set<ElemSet> seen;
  std::deque<ElemSet> todo;
  const ElemSet start = closure(ElemSet{0});
  seen.insert(start);
  todo.push_back(start);
  while (!todo.empty()) {
    const ElemSet cur = todo.front();
    todo.pop_front();
    for_each_elem(s.all() & ~cur, [&](int e) {
      const ElemSet next = closure(cur | elem_bit(e));
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw ResourceError("more than " + std::to_string(cap) + " ideals or filters");
        todo.push_back(next);
      }
    });
  }
  SetLattice out;
  out.sets.assign(seen.begin(), seen.end());
  const int n = static_cast<int>(out.sets.size());
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const bool inc = reverse ? subset_of(out.sets[b], out.sets[a]) : subset_of(out.sets[a], out.sets[b]);
      leq[static_cast<std::size_t>(a) * n + b] = inc;
    }
  }
  out.lattice = FiniteLattice::from_relation(n, leq);
  for (int e = 0; e < s.size(); ++e) {
    out.principal.push_back(out.index_of(reverse ? s.up(e) : s.down(e)));
  }
  return out;
}

}  // namespace

SetLattice ideals(const Pdl& s, std::size_t cap) {
  return enumerate(s, cap, false, [&](ElemSet x) { return s.ideal_closure(x); });
}

SetLattice filters(const Pdl& s, std::size_t cap) {
  return enumerate(s, cap, true, [&](ElemSet x) { return s.filter_closure(x); });
}

PartialCompletion partial_completion(const Pdl& s, std::size_t cap) {
  using Pair = std::pair<ElemSet, ElemSet>;
  std::vector<Pair> elems;
  std::map<Pair, int> index;
  auto add = [&](Pair p) {
    auto [it, inserted] = index.emplace(p, static_cast<int>(elems.size()));
    if (inserted) {
      if (elems.size() >= cap) throw ResourceError("partial completion exceeds " + std::to_string(cap) + " elements");
      elems.push_back(p);
    }
    return it->second;
  };
  PartialCompletion pc;
  for (int e = 0; e < s.size(); ++e) pc.diagonal.push_back(add({s.down(e), s.up(e)}));
  // Join in Idl is the generated ideal, in Fil (reverse inclusion) the
  // intersection; meets dually.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      const Pair a = elems[i];
      const Pair b = elems[k];
      add({s.ideal_closure(a.first | b.first), a.second & b.second});
      add({a.first & b.first, s.filter_closure(a.second | b.second)});
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      leq[static_cast<std::size_t>(a) * n + b] =
          subset_of(elems[a].first, elems[b].first) && subset_of(elems[b].second, elems[a].second);
    }
  }
  pc.lattice = FiniteLattice::from_relation(n, leq);
  pc.elements = std::move(elems);
  return pc;
}

int DeanSolver::element(const Term& var) const {
  const auto& gens = s_.gens();
  if (auto it = gens.find(var.name()); it != gens.end()) return it->second;
  const auto& names = s_.names();
  auto it = std::find(names.begin(), names.end(), var.name());
  if (it == names.end()) throw std::invalid_argument("'" + var.name() + "' is not an element of S");
  return static_cast<int>(it - names.begin());
}

ElemSet DeanSolver::ideal_of(const Term& t) {
  if (t.is_var()) return s_.down(element(t));
  if (auto it = ideal_memo_.find(t); it != ideal_memo_.end()) return it->second;
  ElemSet r = t.is_join() ? 0 : s_.all();
  for (const auto& c : t.children()) {
    if (t.is_join()) r |= ideal_of(c);
    else r &= ideal_of(c);
  }
  if (t.is_join()) r = s_.ideal_closure(r);
  ideal_memo_.emplace(t, r);
  return r;
}

ElemSet DeanSolver::filter_of(const Term& t) {
  if (t.is_var()) return s_.up(element(t));
  if (auto it = filter_memo_.find(t); it != filter_memo_.end()) return it->second;
  ElemSet r = t.is_meet() ? 0 : s_.all();
  for (const auto& c : t.children()) {
    if (t.is_meet()) r |= filter_of(c);
    else r &= filter_of(c);
  }
  if (t.is_meet()) r = s_.filter_closure(r);
  filter_memo_.emplace(t, r);
  return r;
}

bool DeanSolver::leq(const Term& u, const Term& v) {
  if (u == v) return true;
  auto key = std::make_pair(u, v);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool r = false;
  if (u.is_join()) {
    r = std::all_of(u.children().begin(), u.children().end(), [&](const Term& c) { return leq(c, v); });
  } else if (v.is_meet()) {
    r = std::all_of(v.children().begin(), v.children().end(), [&](const Term& c) { return leq(u, c); });
  } else if (u.is_var() && v.is_var()) {
    r = s_.leq(element(u), element(v));
  } else if (u.is_var()) {
    r = contains(ideal_of(v), element(u));
  } else if (v.is_var()) {
    r = contains(filter_of(u), element(v));
  } else {
    r = std::any_of(u.children().begin(), u.children().end(), [&](const Term& c) { return leq(c, v); }) ||
        std::any_of(v.children().begin(), v.children().end(), [&](const Term& c) { return leq(u, c); });
    // u <= s <= v for some s in S.
    for (int e = 0; e < s_.size() && !r; ++e) {
      r = contains(filter_of(u), e) && contains(ideal_of(v), e);
    }
  }
  memo_.emplace(std::move(key), r);
  return r;
}

bool DeanSolver::leq(int u, int v) { return s_.leq(u, v); }

bool dean_leq(const Pdl& s, const Term& u, const Term& v) { return DeanSolver(s).leq(u, v); }

bool dean_leq(const Pdl& s, int u, int v) { return DeanSolver(s).leq(u, v); }

}  // namespace freelat
