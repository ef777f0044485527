#include "freelat/reflect.hpp"

#include <algorithm>
#include <map>

#include "freelat/errors.hpp"

namespace freelat {

namespace {

struct SplitState {
  ElemSet ideal = 0;
  ElemSet filter = 0;
};

// Propagates forced memberships; false on conflict.
bool propagate(const Pdl& s, SplitState& st) {
  for (;;) {
    SplitState next = st;
    for_each_elem(st.ideal, [&](int e) { next.ideal |= s.down(e); });
    for_each_elem(st.filter, [&](int e) { next.filter |= s.up(e); });
    for (const auto& op : s.joins()) {
      if (subset_of(op.args, next.ideal)) next.ideal |= elem_bit(op.result);
      // A join in the filter needs an argument in the filter.
      const ElemSet open = op.args & ~next.ideal;
      if (contains(next.filter, op.result) && count(open) == 1) next.filter |= open;
    }
    for (const auto& op : s.meets()) {
      if (subset_of(op.args, next.filter)) next.filter |= elem_bit(op.result);
      const ElemSet open = op.args & ~next.filter;
      if (contains(next.ideal, op.result) && count(open) == 1) next.ideal |= open;
    }
    if (next.ideal & next.filter) return false;
    if (next.ideal == st.ideal && next.filter == st.filter) return true;
    st = next;
  }
}

void search_splits(const Pdl& s, SplitState st, std::vector<TwoQuotient>& out) {
  if (!propagate(s, st)) return;
  const ElemSet open = s.all() & ~(st.ideal | st.filter);
  if (open == 0) {
    if (st.ideal && st.filter) out.push_back({st.ideal, st.filter});
    return;
  }
  const int e = std::countr_zero(open);
  search_splits(s, {st.ideal | elem_bit(e), st.filter}, out);
  search_splits(s, {st.ideal, st.filter | elem_bit(e)}, out);
}

using Bits = std::vector<std::uint64_t>;

// Order of product elements: by cardinality, then bit pattern.
bool bits_before(const Bits& a, const Bits& b) {
  int wa = 0;
  int wb = 0;
  for (auto x : a) wa += std::popcount(x);
  for (auto x : b) wb += std::popcount(x);
  return wa != wb ? wa < wb : a < b;
}

// Sublattice of 2^k generated by `gens` under union and intersection, or
// nullopt past `cap` elements.
std::optional<std::vector<Bits>> generate(const std::vector<Bits>& gens, std::size_t cap) {
  std::vector<Bits> members;
  std::map<Bits, int> seen;
  auto add = [&](Bits b) {
    if (seen.emplace(b, 0).second) members.push_back(std::move(b));
  };
  for (const auto& g : gens) add(g);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      Bits u = members[i];
      Bits n = members[i];
      for (std::size_t w = 0; w < u.size(); ++w) {
        u[w] |= members[k][w];
        n[w] &= members[k][w];
      }
      add(std::move(u));
      add(std::move(n));
      if (members.size() > cap) return std::nullopt;
    }
  }
  return members;
}

Realization realize_in_product(const std::vector<TwoQuotient>& splits, const std::vector<int>& coords, int n,
                               std::size_t cap, bool* overflow) {
  const std::size_t words = std::max<std::size_t>(1, (coords.size() + 63) / 64);
  std::vector<Bits> images(n, Bits(words, 0));
  for (int e = 0; e < n; ++e) {
    for (std::size_t c = 0; c < coords.size(); ++c) {
      if (contains(splits[coords[c]].filter, e)) images[e][c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
  auto members = generate(images, cap);
  if (!members) {
    *overflow = true;
    return {};
  }
  *overflow = false;
  std::sort(members->begin(), members->end(), bits_before);
  const int m = static_cast<int>(members->size());
  std::vector<char> leq(static_cast<std::size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      bool sub = true;
      for (std::size_t w = 0; w < words && sub; ++w) sub = ((*members)[a][w] & ~(*members)[b][w]) == 0;
      leq[static_cast<std::size_t>(a) * m + b] = sub;
    }
  }
  Realization r;
  r.target = FiniteLattice::from_relation(m, leq);
  for (int e = 0; e < n; ++e) {
    const auto it = std::lower_bound(members->begin(), members->end(), images[e], bits_before);
    r.map.push_back(static_cast<int>(it - members->begin()));
  }
  r.kernel = Partition::from_labels(r.map);
  return r;
}

}  // namespace

std::vector<TwoQuotient> two_quotients(const Pdl& s) {
  std::vector<TwoQuotient> out;
  if (s.size() < 2) return out;
  search_splits(s, {}, out);
  for (const auto& q : out) {
    if (!s.is_ideal(q.ideal) || !s.is_filter(q.filter)) throw InvariantViolation("two-quotient is not prime");
  }
  std::sort(out.begin(), out.end(), [](const TwoQuotient& a, const TwoQuotient& b) { return a.ideal < b.ideal; });
  return out;
}

std::optional<std::string> homomorphism_defect(const Pdl& s, const FiniteLattice& l, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != s.size()) return "map does not cover every element";
  for (int e : map) {
    if (e < 0 || e >= l.size()) return "map leaves the target";
  }
  for (int a = 0; a < s.size(); ++a) {
    for (int b = 0; b < s.size(); ++b) {
      if (s.leq(a, b) && !l.leq(map[a], map[b])) return "order not preserved: " + s.name(a) + " <= " + s.name(b);
    }
  }
  for (const auto& op : s.joins()) {
    int j = l.bottom();
    for_each_elem(op.args, [&](int a) { j = l.join(j, map[a]); });
    if (j != map[op.result]) return "join not preserved at " + s.name(op.result);
  }
  for (const auto& op : s.meets()) {
    int m = l.top();
    for_each_elem(op.args, [&](int a) { m = l.meet(m, map[a]); });
    if (m != map[op.result]) return "meet not preserved at " + s.name(op.result);
  }
  return std::nullopt;
}

Realization make_realization(const FiniteLattice& l, const std::vector<int>& map) {
  const Sublattice sub = generated_sublattice(l, map);
  Realization r;
  r.target = sub.lattice;
  for (int e : map) r.map.push_back(sub.index[e]);
  r.kernel = Partition::from_labels(r.map);
  return r;
}

DistributiveReflection distributive_reflection(const Pdl& s, const ReflectOptions& opts) {
  DistributiveReflection out;
  out.splits = two_quotients(s);
  const int n = s.size();
  if (out.splits.empty()) {
    out.r.target = FiniteLattice();
    out.r.map.assign(n, 0);
    out.r.kernel = Partition::all(n);
    out.delta = out.r.kernel;
    return out;
  }
  std::vector<int> all(out.splits.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  // delta only depends on which elements some split separates.
  std::vector<std::vector<int>> labels(n);
  for (int e = 0; e < n; ++e) {
    for (const auto& q : out.splits) labels[e].push_back(contains(q.filter, e));
  }
  out.delta = Partition::from_labels(labels);

  bool overflow = false;
  out.r = realize_in_product(out.splits, all, n, opts.full_product_cap, &overflow);
  out.coordinates = all;
  if (overflow) {
    // Greedy set cover of the pairs delta separates.
    std::vector<std::pair<int, int>> pending;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (!out.delta.same(a, b)) pending.emplace_back(a, b);
      }
    }
    std::vector<int> chosen;
    while (!pending.empty()) {
      int best = -1;
      std::size_t best_count = 0;
      for (std::size_t c = 0; c < out.splits.size(); ++c) {
        std::size_t k = 0;
        for (auto [a, b] : pending) {
          if (contains(out.splits[c].filter, a) != contains(out.splits[c].filter, b)) ++k;
        }
        if (k > best_count) {
          best_count = k;
          best = static_cast<int>(c);
        }
      }
      chosen.push_back(best);
      std::erase_if(pending, [&](const std::pair<int, int>& p) {
        return contains(out.splits[best].filter, p.first) != contains(out.splits[best].filter, p.second);
      });
    }
    std::sort(chosen.begin(), chosen.end());
    out.r = realize_in_product(out.splits, chosen, n, std::size_t{1} << 20, &overflow);
    if (overflow) throw ResourceError("distributive image of S is too large");
    out.coordinates = chosen;
  }
  if (!(out.r.kernel == out.delta)) throw InvariantViolation("distributive realization has the wrong kernel");
  if (auto defect = homomorphism_defect(s, out.r.target, out.r.map)) {
    throw InvariantViolation("distributive realization: " + *defect);
  }
  return out;
}

std::vector<bool> negs_satisfied(const Partition& kernel, const Pdl& s) {
  std::vector<bool> out;
  for (const auto& n : s.negs()) out.push_back(!kernel.same(n.uv, n.v));
  return out;
}

std::string bracket(const Pdl& s, const Partition& p) {
  const auto named = s.named_elements();
  std::vector<std::string> names;
  for (int e : named) names.push_back(s.name(e));
  return p.restrict_to(named).to_bracket(names);
}

std::string bracket_all(const Pdl& s, const Partition& p) { return p.to_bracket(s.names()); }

}  // namespace freelat
