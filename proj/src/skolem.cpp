#include "freelat/skolem.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "freelat/errors.hpp"

namespace freelat {

int RelationalQuasilattice::index_of(const Term& t) const {
  auto it = index.find(t);
  return it == index.end() ? -1 : it->second;
}

bool RelationalQuasilattice::le(const Term& a, const Term& b) const {
  const int i = index_of(a);
  const int j = index_of(b);
  if (i < 0 || j < 0) throw std::out_of_range("term outside the closure universe");
  return le(i, j);
}

std::vector<Term> subterm_universe(const Presentation& p) {
  std::set<Term> out;
  for (const auto& v : p.vars) out.insert(Term::var(v));
  for (const auto& l : p.rplus) {
    collect_subterms(l.lhs, out);
    collect_subterms(l.rhs, out);
  }
  for (const auto& l : p.rminus) {
    collect_subterms(l.lhs, out);
    collect_subterms(l.rhs, out);
    collect_subterms(Term::join({l.lhs, l.rhs}), out);
  }
  return {out.begin(), out.end()};
}

namespace {

bool apply_op(RelationalQuasilattice& q, const OpTriple& op, bool is_join) {
  const int n = q.size();
  bool changed = false;
  auto set = [&](int a, int b) {
    char& cell = is_join ? q.leq[a][b] : q.leq[b][a];
    if (!cell) {
      cell = 1;
      changed = true;
    }
  };
  for (int a : op.args) set(a, op.result);
  // Every common upper bound of the args lies above the result.
  for (int u = 0; u < n; ++u) {
    bool bound = true;
    for (int a : op.args) {
      if (!(is_join ? q.leq[a][u] : q.leq[u][a])) {
        bound = false;
        break;
      }
    }
    if (bound) set(op.result, u);
  }
  return changed;
}

bool transitive_closure(std::vector<std::vector<char>>& leq) {
  const int n = static_cast<int>(leq.size());
  bool changed = false;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (leq[k][j] && !leq[i][j]) {
          leq[i][j] = 1;
          changed = true;
        }
      }
    }
  }
  return changed;
}

}  // namespace

RelationalQuasilattice close(const std::vector<Term>& universe, const std::vector<Literal>& rplus,
                             const std::vector<Literal>& rminus, const CloseOptions& opts) {
  RelationalQuasilattice q;
  q.universe = universe;
  std::sort(q.universe.begin(), q.universe.end());
  q.universe.erase(std::unique(q.universe.begin(), q.universe.end()), q.universe.end());
  const int n = q.size();
  for (int i = 0; i < n; ++i) q.index.emplace(q.universe[i], i);
  q.leq.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) q.leq[i][i] = 1;

  auto need = [&](const Term& t) {
    const int i = q.index_of(t);
    if (i < 0) throw std::invalid_argument("term " + to_string(t) + " is not in the universe");
    return i;
  };
  for (const auto& l : rplus) q.leq[need(l.lhs)][need(l.rhs)] = 1;

  for (int i = 0; i < n; ++i) {
    const Term& t = q.universe[i];
    if (t.is_var()) continue;
    OpTriple op{{}, i};
    for (const auto& c : t.children()) op.args.push_back(need(c));
    (t.is_join() ? q.joins : q.meets).push_back(std::move(op));
  }
  for (const auto& l : rminus) {
    const int u = need(l.lhs);
    const int v = need(l.rhs);
    if (u == v) continue;
    q.joins.push_back(OpTriple{{std::min(u, v), std::max(u, v)}, need(Term::join({l.lhs, l.rhs}))});
  }

  for (std::size_t round = 0;; ++round) {
    if (round >= opts.max_rounds) throw ResourceError("closure did not stabilize within the round cap");
    bool changed = transitive_closure(q.leq);
    for (const auto& op : q.joins) changed |= apply_op(q, op, true);
    for (const auto& op : q.meets) changed |= apply_op(q, op, false);
    if (!changed) break;
  }
  return q;
}

ConsistencyResult consistent(const RelationalQuasilattice& q, const std::vector<Literal>& rminus) {
  for (const auto& l : rminus) {
    if (q.le(l.lhs, l.rhs)) return {false, l};
  }
  return {};
}

std::optional<int> Pdl::join_of(ElemSet args) const {
  auto it = join_index_.find(args);
  if (it == join_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Pdl::meet_of(ElemSet args) const {
  auto it = meet_index_.find(args);
  if (it == meet_index_.end()) return std::nullopt;
  return it->second;
}

ElemSet Pdl::ideal_closure(ElemSet seed) const {
  ElemSet s = seed;
  for (;;) {
    ElemSet next = s;
    for_each_elem(s, [&](int e) { next |= down_[e]; });
    for (const auto& op : joins_) {
      if (subset_of(op.args, next)) next |= down_[op.result];
    }
    if (next == s) return s;
    s = next;
  }
}

ElemSet Pdl::filter_closure(ElemSet seed) const {
  ElemSet s = seed;
  for (;;) {
    ElemSet next = s;
    for_each_elem(s, [&](int e) { next |= up_[e]; });
    for (const auto& op : meets_) {
      if (subset_of(op.args, next)) next |= up_[op.result];
    }
    if (next == s) return s;
    s = next;
  }
}

std::optional<int> Pdl::element_of(const Term& t) const {
  const int i = rq_.index_of(t);
  if (i < 0) return std::nullopt;
  return class_of_[i];
}

bool Pdl::formally_join(int e) const {
  return std::any_of(members_[e].begin(), members_[e].end(), [](const Term& t) { return t.is_join(); });
}

bool Pdl::formally_meet(int e) const {
  return std::any_of(members_[e].begin(), members_[e].end(), [](const Term& t) { return t.is_meet(); });
}

std::vector<std::pair<int, int>> Pdl::splus() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      if (a != b && leq(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<int> Pdl::named_elements() const {
  std::vector<int> out;
  for (int e = 0; e < size(); ++e) {
    if (named_by_var_[e]) out.push_back(e);
  }
  return out;
}

Pdl quotient(const RelationalQuasilattice& q, const Presentation& p) {
  const auto check = consistent(q, p.rminus);
  if (!check.consistent) {
    throw InconsistentPresentation("presentation is inconsistent: " + to_string(*check.violated) +
                                   " is forced");
  }
  const int n = q.size();
  std::vector<int> rep(n);
  for (int i = 0; i < n; ++i) {
    rep[i] = i;
    for (int j = 0; j < i; ++j) {
      if (q.equivalent(i, j)) {
        rep[i] = rep[j];
        break;
      }
    }
  }

  // Classes holding a declared variable come first, in declaration order;
  // the rest follow by their smallest member.
  std::vector<int> order;
  std::vector<int> element(n, -1);
  auto by_size = [&](int a, int b) {
    return std::forward_as_tuple(q.universe[a].size(), q.universe[a]) <
           std::forward_as_tuple(q.universe[b].size(), q.universe[b]);
  };
  for (const auto& v : p.vars) {
    const int i = q.index_of(Term::var(v));
    if (i < 0) throw std::invalid_argument("declared variable missing from the universe");
    if (element[rep[i]] < 0) {
      element[rep[i]] = static_cast<int>(order.size());
      order.push_back(rep[i]);
    }
  }
  const std::size_t named = order.size();
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (rep[i] == i && element[i] < 0) rest.push_back(i);
  }
  // Order unnamed classes by their smallest member.
  std::vector<int> smallest(n, -1);
  for (int i = 0; i < n; ++i) {
    int& s = smallest[rep[i]];
    if (s < 0 || by_size(i, s)) s = i;
  }
  std::sort(rest.begin(), rest.end(), [&](int a, int b) { return by_size(smallest[a], smallest[b]); });
  for (int r : rest) {
    element[r] = static_cast<int>(order.size());
    order.push_back(r);
  }
  const int m = static_cast<int>(order.size());
  if (m > kMaxPdlElements) {
    throw ResourceError("partially defined lattice has " + std::to_string(m) + " elements; the cap is " +
                        std::to_string(kMaxPdlElements));
  }

  Pdl s;
  s.source_ = p;
  s.rq_ = q;
  s.class_of_.resize(n);
  for (int i = 0; i < n; ++i) s.class_of_[i] = element[rep[i]];
  s.members_.assign(m, {});
  for (int i = 0; i < n; ++i) s.members_[s.class_of_[i]].push_back(q.universe[i]);
  for (auto& ms : s.members_) {
    std::sort(ms.begin(), ms.end(), [](const Term& a, const Term& b) {
      return std::forward_as_tuple(a.size(), a) < std::forward_as_tuple(b.size(), b);
    });
  }
  s.names_.resize(m);
  s.named_by_var_.assign(m, false);
  for (const auto& v : p.vars) {
    const int e = s.class_of_[q.index_of(Term::var(v))];
    s.gens_.emplace(v, e);
    if (!s.named_by_var_[e]) {
      s.named_by_var_[e] = true;
      s.names_[e] = v;
    }
  }
  for (int e = static_cast<int>(named); e < m; ++e) s.names_[e] = "(" + to_string(s.members_[e].front()) + ")";

  s.up_.assign(m, 0);
  s.down_.assign(m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (q.le(order[a], order[b])) {
        s.up_[a] |= elem_bit(b);
        s.down_[b] |= elem_bit(a);
      }
    }
  }

  auto add_ops = [&](const std::vector<OpTriple>& ops, bool is_join, std::vector<PdlOp>& out,
                     std::map<ElemSet, int>& index) {
    for (const auto& op : ops) {
      ElemSet args = 0;
      for (int a : op.args) args |= elem_bit(s.class_of_[a]);
      // Keep the maximal arguments of a join, the minimal ones of a meet.
      ElemSet reduced = args;
      for_each_elem(args, [&](int a) {
        const ElemSet beyond = (is_join ? s.up_[a] : s.down_[a]) & ~elem_bit(a);
        if (beyond & args) reduced &= ~elem_bit(a);
      });
      if (count(reduced) < 2) continue;
      const int result = s.class_of_[op.result];
      auto [it, inserted] = index.emplace(reduced, result);
      if (!inserted) {
        if (it->second != result) throw InvariantViolation("two results for one defined operation");
        continue;
      }
      out.push_back(PdlOp{reduced, result});
    }
  };
  add_ops(q.joins, true, s.joins_, s.join_index_);
  add_ops(q.meets, false, s.meets_, s.meet_index_);

  // A defined join is the least upper bound among the elements; dually.
  for (const auto& op : s.joins_) {
    ElemSet bounds = s.all();
    for_each_elem(op.args, [&](int a) { bounds &= s.up_[a]; });
    if (!subset_of(bounds, s.up_[op.result]) || !contains(bounds, op.result)) {
      throw InvariantViolation("defined join is not a least upper bound");
    }
  }
  for (const auto& op : s.meets_) {
    ElemSet bounds = s.all();
    for_each_elem(op.args, [&](int a) { bounds &= s.down_[a]; });
    if (!subset_of(bounds, s.down_[op.result]) || !contains(bounds, op.result)) {
      throw InvariantViolation("defined meet is not a greatest lower bound");
    }
  }

  for (const auto& l : p.rminus) {
    const int u = s.class_of_[q.index_of(l.lhs)];
    const int v = s.class_of_[q.index_of(l.rhs)];
    const int uv = s.class_of_[q.index_of(Term::join({l.lhs, l.rhs}))];
    s.negs_.push_back(NegPair{u, v, uv, l});
  }
  return s;
}

Pdl build_pdl(const Presentation& p, const CloseOptions& opts) {
  return quotient(close(subterm_universe(p), p.rplus, p.rminus, opts), p);
}

bool skolem_wp(const Pdl& s, const Term& u, const Term& v) {
  if (u == v) return true;
  Presentation q = s.source();
  q.rminus.push_back(Literal{LiteralKind::NLeq, u, v});
  const auto rq = close(subterm_universe(q), q.rplus, q.rminus);
  return rq.le(u, v);
}

bool skolem_wp(const Pdl& s, int u, int v) {
  if (u == v) return true;
  return skolem_wp(s, s.representative(u), s.representative(v));
}

}  // namespace freelat
