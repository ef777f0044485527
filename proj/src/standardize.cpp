#include "freelat/standardize.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "freelat/errors.hpp"

namespace freelat {

namespace {

using Dnf = std::vector<std::vector<Literal>>;

Dnf conjoin(const Dnf& a, const Dnf& b, std::size_t cap) {
  Dnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (out.size() >= cap) throw ResourceError("negation expansion (rules 2 and 3) exceeds the branch cap");
      auto z = x;
      z.insert(z.end(), y.begin(), y.end());
      std::sort(z.begin(), z.end());
      z.erase(std::unique(z.begin(), z.end()), z.end());
      out.push_back(std::move(z));
    }
  }
  return out;
}

Dnf expand(const Term& u, const Term& v, std::size_t cap) {
  Dnf out;
  auto append = [&](Dnf d) {
    for (auto& c : d) {
      if (out.size() >= cap) throw ResourceError("negation expansion (rules 2 and 3) exceeds the branch cap");
      out.push_back(std::move(c));
    }
  };
  if (u.is_join()) {
    for (const auto& c : u.children()) append(expand(c, v, cap));
  } else if (v.is_meet()) {
    for (const auto& c : v.children()) append(expand(u, c, cap));
  } else if (u.is_meet() && v.is_join()) {
    Dnf acc{{}};
    for (const auto& c : u.children()) acc = conjoin(acc, expand(c, v, cap), cap);
    for (const auto& c : v.children()) acc = conjoin(acc, expand(u, c, cap), cap);
    return acc;
  } else {
    out.push_back({Literal{LiteralKind::NLeq, u, v}});
  }
  return out;
}

}  // namespace

std::vector<std::vector<Literal>> expand_negation(const Literal& l, std::size_t cap) {
  return expand(l.lhs, l.rhs, cap);
}

std::optional<WFailure> find_w_failure(const Pdl& s) {
  for (int a = 0; a < s.size(); ++a) {
    for (const auto& m : s.members(a)) {
      if (!m.is_meet()) continue;
      for (int b = 0; b < s.size(); ++b) {
        if (!s.leq(a, b)) continue;
        for (const auto& j : s.members(b)) {
          if (!j.is_join()) continue;
          bool resolved = false;
          for (const auto& si : m.children()) resolved = resolved || s.leq(*s.element_of(si), b);
          for (const auto& tj : j.children()) resolved = resolved || s.leq(a, *s.element_of(tj));
          if (!resolved) return WFailure{m, j};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_standardized(const Pdl& s) {
  if (find_w_failure(s)) return false;
  return std::none_of(s.negs().begin(), s.negs().end(), [](const NegPair& n) {
    return n.source.lhs.is_join() || n.source.rhs.is_meet() || (n.source.lhs.is_meet() && n.source.rhs.is_join());
  });
}

std::vector<Presentation> standardize(const Presentation& p, const StandardizeOptions& opts) {
  // Rules (2) and (3) first: they only touch R-.
  Dnf negs{{}};
  for (const auto& l : p.rminus) negs = conjoin(negs, expand_negation(l, opts.max_branches), opts.max_branches);

  std::vector<Presentation> todo;
  for (auto& conj : negs) {
    Presentation q = p;
    q.rminus = std::move(conj);
    q.normalize();
    todo.push_back(std::move(q));
  }

  std::vector<Presentation> out;
  std::set<std::string> seen;
  std::size_t expanded = 0;
  while (!todo.empty()) {
    Presentation q = std::move(todo.back());
    todo.pop_back();
    if (!seen.insert(to_string(q)).second) continue;
    if (++expanded > opts.max_branches) {
      throw ResourceError("standardization rule 1 exceeds the branch cap of " + std::to_string(opts.max_branches));
    }
    const auto rq = close(subterm_universe(q), q.rplus, q.rminus, opts.close);
    if (!consistent(rq, q.rminus).consistent) continue;
    const Pdl s = quotient(rq, q);
    const auto w = find_w_failure(s);
    if (!w) {
      out.push_back(std::move(q));
      continue;
    }
    // Rule (1): some meetand below the join, or the meet below some joinand.
    std::vector<Literal> options;
    for (const auto& si : w->meet.children()) options.push_back({LiteralKind::Leq, si, w->join});
    for (const auto& tj : w->join.children()) options.push_back({LiteralKind::Leq, w->meet, tj});
    for (auto it = options.rbegin(); it != options.rend(); ++it) {
      Presentation b = q;
      b.rplus.push_back(*it);
      b.normalize();
      todo.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end(), [](const Presentation& a, const Presentation& b) {
    return to_string(a) < to_string(b);
  });
  return out;
}

}  // namespace freelat
