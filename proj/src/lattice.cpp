#include "freelat/lattice.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <set>
#include <string>

#include "freelat/errors.hpp"

namespace freelat {

namespace {

// Least upper bound of a and b under `le`, or -1.
template <class Le>
int least_bound(int n, int a, int b, Le&& le) {
  int best = -1;
  for (int c = 0; c < n; ++c) {
    if (!le(a, c) || !le(b, c)) continue;
    if (best < 0 || le(c, best)) best = c;
  }
  if (best < 0) return -1;
  for (int c = 0; c < n; ++c) {
    if (le(a, c) && le(b, c) && !le(best, c)) return -1;
  }
  return best;
}

}  // namespace

FiniteLattice::FiniteLattice() : leq_{1}, join_{0}, meet_{0} {}

FiniteLattice FiniteLattice::from_relation(int n, const std::vector<char>& leq) {
  if (n < 1) throw InvalidLattice("a lattice needs at least one element");
  if (leq.size() != static_cast<std::size_t>(n) * n) throw InvalidLattice("order relation has the wrong size");
  FiniteLattice l;
  l.n_ = n;
  l.leq_ = leq;
  for (int a = 0; a < n; ++a) {
    if (!l.leq(a, a)) throw InvalidLattice("order is not reflexive at " + std::to_string(a));
    for (int b = 0; b < n; ++b) {
      if (a != b && l.leq(a, b) && l.leq(b, a)) throw InvalidLattice("order is not antisymmetric");
      if (!l.leq(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (l.leq(b, c) && !l.leq(a, c)) throw InvalidLattice("order is not transitive");
      }
    }
  }
  l.join_.assign(static_cast<std::size_t>(n) * n, 0);
  l.meet_.assign(static_cast<std::size_t>(n) * n, 0);
  auto le = [&](int a, int b) { return l.leq(a, b); };
  auto ge = [&](int a, int b) { return l.leq(b, a); };
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const int j = least_bound(n, a, b, le);
      const int m = least_bound(n, a, b, ge);
      if (j < 0 || m < 0) {
        throw InvalidLattice("elements " + std::to_string(a) + " and " + std::to_string(b) +
                             " have no " + (j < 0 ? "join" : "meet"));
      }
      l.join_[l.idx(a, b)] = l.join_[l.idx(b, a)] = j;
      l.meet_[l.idx(a, b)] = l.meet_[l.idx(b, a)] = m;
    }
  }
  l.bottom_ = 0;
  l.top_ = 0;
  for (int a = 1; a < n; ++a) {
    l.bottom_ = l.meet(l.bottom_, a);
    l.top_ = l.join(l.top_, a);
  }
  return l;
}

FiniteLattice FiniteLattice::from_covers(int n, const std::vector<std::pair<int, int>>& below) {
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i) * n + i] = 1;
  for (auto [a, b] : below) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidLattice("cover pair out of range");
    leq[static_cast<std::size_t>(a) * n + b] = 1;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!leq[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (leq[static_cast<std::size_t>(k) * n + j]) leq[static_cast<std::size_t>(i) * n + j] = 1;
      }
    }
  }
  return from_relation(n, leq);
}

FiniteLattice FiniteLattice::chain(int n) {
  std::vector<std::pair<int, int>> c;
  for (int i = 0; i + 1 < n; ++i) c.emplace_back(i, i + 1);
  return from_covers(n, c);
}

FiniteLattice FiniteLattice::boolean(int atoms) {
  const int n = 1 << atoms;
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) leq[static_cast<std::size_t>(a) * n + b] = (a & ~b) == 0;
  }
  return from_relation(n, leq);
}

FiniteLattice FiniteLattice::pentagon() {
  // 0, b, a, c, 1
  return from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
}

FiniteLattice FiniteLattice::diamond() { return from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}); }

FiniteLattice FiniteLattice::product(const FiniteLattice& a, const FiniteLattice& b) {
  const int n = a.size() * b.size();
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      leq[static_cast<std::size_t>(x) * n + y] =
          a.leq(x / b.size(), y / b.size()) && b.leq(x % b.size(), y % b.size());
    }
  }
  return from_relation(n, leq);
}

int FiniteLattice::join_all(const std::vector<int>& xs) const {
  int r = bottom_;
  for (int x : xs) r = join(r, x);
  return r;
}

int FiniteLattice::meet_all(const std::vector<int>& xs) const {
  int r = top_;
  for (int x : xs) r = meet(r, x);
  return r;
}

std::vector<int> FiniteLattice::lower_covers(int a) const {
  std::vector<int> out;
  for (int b = 0; b < n_; ++b) {
    if (b == a || !leq(b, a)) continue;
    bool cover = true;
    for (int c = 0; c < n_ && cover; ++c) {
      if (c != a && c != b && leq(b, c) && leq(c, a)) cover = false;
    }
    if (cover) out.push_back(b);
  }
  return out;
}

std::vector<int> FiniteLattice::upper_covers(int a) const {
  std::vector<int> out;
  for (int b = 0; b < n_; ++b) {
    if (b == a || !leq(a, b)) continue;
    bool cover = true;
    for (int c = 0; c < n_ && cover; ++c) {
      if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
    }
    if (cover) out.push_back(b);
  }
  return out;
}

FiniteLattice FiniteLattice::dual() const {
  FiniteLattice d = *this;
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) d.leq_[idx(a, b)] = leq_[idx(b, a)];
  }
  std::swap(d.join_, d.meet_);
  std::swap(d.bottom_, d.top_);
  return d;
}

nlohmann::json FiniteLattice::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      if (leq(a, b)) pairs.push_back({a, b});
    }
  }
  return {{"n", n_}, {"leq", pairs}};
}

FiniteLattice FiniteLattice::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("leq")) {
    throw InvalidLattice("lattice JSON needs fields n and leq");
  }
  const int n = j.at("n").get<int>();
  if (n < 1) throw InvalidLattice("lattice JSON: n must be positive");
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  for (const auto& p : j.at("leq")) {
    if (!p.is_array() || p.size() != 2) throw InvalidLattice("lattice JSON: leq entries are [i, j] pairs");
    const int a = p[0].get<int>();
    const int b = p[1].get<int>();
    if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidLattice("lattice JSON: index out of range");
    leq[static_cast<std::size_t>(a) * n + b] = 1;
  }
  return from_relation(n, leq);
}

DoublingResult double_interval(const FiniteLattice& l, Interval iv) {
  const int n = l.size();
  if (iv.bottom < 0 || iv.top < 0 || iv.bottom >= n || iv.top >= n) throw InvalidInterval("interval out of range");
  if (!l.leq(iv.bottom, iv.top)) {
    throw InvalidInterval("interval bottom " + std::to_string(iv.bottom) + " is not below top " +
                          std::to_string(iv.top));
  }
  DoublingResult r;
  r.in_interval.assign(n, 0);
  r.lift0.assign(n, -1);
  r.lift1.assign(n, -1);
  std::vector<int> bit;  // -1 outside I
  for (int x = 0; x < n; ++x) {
    const bool in = l.leq(iv.bottom, x) && l.leq(x, iv.top);
    r.in_interval[x] = in;
    r.lift0[x] = static_cast<int>(r.lambda.size());
    r.lambda.push_back(x);
    bit.push_back(in ? 0 : -1);
    if (in) {
      r.lift1[x] = static_cast<int>(r.lambda.size());
      r.lambda.push_back(x);
      bit.push_back(1);
    } else {
      r.lift1[x] = r.lift0[x];
    }
  }
  const int m = static_cast<int>(r.lambda.size());
  std::vector<char> leq(static_cast<std::size_t>(m) * m, 0);
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      const bool base = l.leq(r.lambda[p], r.lambda[q]);
      // Compare images in L; two doubled elements also compare their bits.
      const bool both_doubled = bit[p] >= 0 && bit[q] >= 0;
      leq[static_cast<std::size_t>(p) * m + q] = base && (!both_doubled || bit[p] <= bit[q]);
    }
  }
  r.doubled = FiniteLattice::from_relation(m, leq);
  return r;
}

std::vector<int> join_irreducibles(const FiniteLattice& l) {
  std::vector<int> out;
  for (int a = 0; a < l.size(); ++a) {
    if (l.lower_covers(a).size() == 1) out.push_back(a);
  }
  return out;
}

std::vector<int> meet_irreducibles(const FiniteLattice& l) {
  std::vector<int> out;
  for (int a = 0; a < l.size(); ++a) {
    if (l.upper_covers(a).size() == 1) out.push_back(a);
  }
  return out;
}

namespace {

// a has a nontrivial join cover inside `pool` iff it lies below the join of
// the pool elements not above it. Covers refine to join irreducibles.
bool covered_nontrivially(const FiniteLattice& l, int a, const std::vector<int>& pool) {
  int j = l.bottom();
  for (int x : pool) {
    if (!l.leq(a, x)) j = l.join(j, x);
  }
  return a != l.bottom() && l.leq(a, j);
}

}  // namespace

bool is_join_prime(const FiniteLattice& l, int a) { return !covered_nontrivially(l, a, join_irreducibles(l)); }

std::vector<int> join_primes(const FiniteLattice& l) {
  const auto ji = join_irreducibles(l);
  std::vector<int> out;
  for (int a = 0; a < l.size(); ++a) {
    if (!covered_nontrivially(l, a, ji)) out.push_back(a);
  }
  return out;
}

std::vector<int> meet_primes(const FiniteLattice& l) { return join_primes(l.dual()); }

std::vector<std::vector<int>> minimal_join_covers(const FiniteLattice& l, int p) {
  std::vector<int> pool;
  for (int j : join_irreducibles(l)) {
    if (!l.leq(p, j)) pool.push_back(j);
  }
  // Joins of pool suffixes, for pruning.
  std::vector<int> suffix(pool.size() + 1, l.bottom());
  for (std::size_t i = pool.size(); i-- > 0;) suffix[i] = l.join(suffix[i + 1], pool[i]);

  std::vector<std::vector<int>> subset_minimal;
  std::vector<int> cur;
  auto necessary = [&](const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      int j = l.bottom();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k != i) j = l.join(j, v[k]);
      }
      if (l.leq(p, j)) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t i, int acc) -> void {
    if (l.leq(p, acc) && !cur.empty()) {
      if (necessary(cur)) subset_minimal.push_back(cur);
      return;
    }
    if (i == pool.size() || !l.leq(p, l.join(acc, suffix[i]))) return;
    cur.push_back(pool[i]);
    self(self, i + 1, l.join(acc, pool[i]));
    cur.pop_back();
    self(self, i + 1, acc);
  };
  if (p != l.bottom()) dfs(dfs, 0, l.bottom());

  auto refines = [&](const std::vector<int>& u, const std::vector<int>& v) {
    return std::all_of(u.begin(), u.end(), [&](int x) {
      return std::any_of(v.begin(), v.end(), [&](int y) { return l.leq(x, y); });
    });
  };
  std::vector<std::vector<int>> out;
  for (const auto& v : subset_minimal) {
    bool minimal = true;
    for (const auto& u : subset_minimal) {
      if (u != v && refines(u, v) && !refines(v, u)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::optional<int>> d_rank(const FiniteLattice& l) {
  const int n = l.size();
  const auto ji = join_irreducibles(l);
  std::vector<std::optional<int>> rank(n);
  std::vector<char> in_d(n, 0);
  for (int a : join_primes(l)) {
    in_d[a] = 1;
    rank[a] = 0;
  }
  for (int k = 1; k <= n; ++k) {
    // dd(v): join of the previous D-level below v.
    std::vector<int> dd(n, l.bottom());
    for (int v = 0; v < n; ++v) {
      for (int d = 0; d < n; ++d) {
        if (in_d[d] && l.leq(d, v)) dd[v] = l.join(dd[v], d);
      }
    }
    std::vector<char> next = in_d;
    for (int a = 0; a < n; ++a) {
      if (in_d[a]) continue;
      // a fails iff some y with a !<= y has a <= join{j in J : a !<= j, dd(j) <= y};
      // that set is the largest cover whose D-refinement stays below y.
      bool ok = true;
      for (int y = 0; y < n && ok; ++y) {
        if (l.leq(a, y)) continue;
        int cover = l.bottom();
        for (int j : ji) {
          if (!l.leq(a, j) && l.leq(dd[j], y)) cover = l.join(cover, j);
        }
        if (l.leq(a, cover)) ok = false;
      }
      if (ok) {
        next[a] = 1;
        rank[a] = k;
      }
    }
    if (next == in_d) break;
    in_d = std::move(next);
  }
  return rank;
}

bool is_lower_bounded(const FiniteLattice& l) {
  const auto r = d_rank(l);
  return std::all_of(r.begin(), r.end(), [](const auto& x) { return x.has_value(); });
}

bool is_upper_bounded(const FiniteLattice& l) { return is_lower_bounded(l.dual()); }

bool is_bounded(const FiniteLattice& l) { return is_lower_bounded(l) && is_upper_bounded(l); }

WhitmanReport whitman_W(const FiniteLattice& l) {
  const int n = l.size();
  WhitmanReport rep;
  std::set<std::pair<int, int>> seen;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const int u = l.meet(a, b);
      for (int c = 0; c < n; ++c) {
        for (int d = c; d < n; ++d) {
          const int v = l.join(c, d);
          if (!l.leq(u, v)) continue;
          if (l.leq(a, v) || l.leq(b, v) || l.leq(u, c) || l.leq(u, d)) continue;
          rep.holds = false;
          if (seen.emplace(u, v).second) rep.failures.push_back({u, v});
        }
      }
    }
  }
  return rep;
}

bool is_distributive(const FiniteLattice& l) {
  const int n = l.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) return false;
      }
    }
  }
  return true;
}

Sublattice generated_sublattice(const FiniteLattice& l, const std::vector<int>& seed) {
  const int n = l.size();
  std::vector<char> in(n, 0);
  std::vector<int> members;
  for (int s : seed) {
    if (!in[s]) {
      in[s] = 1;
      members.push_back(s);
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      for (int c : {l.join(members[i], members[k]), l.meet(members[i], members[k])}) {
        if (!in[c]) {
          in[c] = 1;
          members.push_back(c);
        }
      }
    }
  }
  Sublattice s;
  s.index.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (in[x]) {
      s.index[x] = static_cast<int>(s.embed.size());
      s.embed.push_back(x);
    }
  }
  const int m = static_cast<int>(s.embed.size());
  if (m == 0) return s;
  std::vector<char> leq(static_cast<std::size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) leq[static_cast<std::size_t>(a) * m + b] = l.leq(s.embed[a], s.embed[b]);
  }
  s.lattice = FiniteLattice::from_relation(m, leq);
  return s;
}

bool is_homomorphism(const FiniteLattice& from, const FiniteLattice& to, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != from.size()) return false;
  for (int a = 0; a < from.size(); ++a) {
    for (int b = 0; b < from.size(); ++b) {
      if (f[from.join(a, b)] != to.join(f[a], f[b])) return false;
      if (f[from.meet(a, b)] != to.meet(f[a], f[b])) return false;
    }
  }
  return true;
}

namespace {

// Lattices on bottom + m middle elements + top, from naturally labelled
// posets on the middle. Codes are the middle order relation as bits,
// minimized over relabellings.
void lattices_with_middle(int m, std::vector<FiniteLattice>& out) {
  std::vector<std::uint64_t> down(m, 0);  // strict down-sets within the middle
  std::set<std::uint64_t> codes;
  std::vector<int> perm(m);

  auto middle_le = [&](int a, int b) { return a == b || ((down[b] >> a) & 1U); };
  auto is_lattice = [&]() {
    // Every pair of middle elements needs a least upper bound among middle
    // elements plus top, and dually.
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        int best = -1;
        int count = 0;
        for (int c = 0; c < m; ++c) {
          if (middle_le(a, c) && middle_le(b, c)) {
            ++count;
            if (best < 0 || middle_le(c, best)) best = c;
          }
        }
        if (count > 0) {
          for (int c = 0; c < m; ++c) {
            if (middle_le(a, c) && middle_le(b, c) && !middle_le(best, c)) return false;
          }
        }
        best = -1;
        count = 0;
        for (int c = 0; c < m; ++c) {
          if (middle_le(c, a) && middle_le(c, b)) {
            ++count;
            if (best < 0 || middle_le(best, c)) best = c;
          }
        }
        if (count > 0) {
          for (int c = 0; c < m; ++c) {
            if (middle_le(c, a) && middle_le(c, b) && !middle_le(c, best)) return false;
          }
        }
      }
    }
    return true;
  };
  auto code_under = [&](const std::vector<int>& p) {
    std::uint64_t code = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (middle_le(a, b)) code |= std::uint64_t{1} << (p[a] * m + p[b]);
      }
    }
    return code;
  };
  auto emit = [&]() {
    if (!is_lattice()) return;
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
      best = std::min(best, code_under(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!codes.insert(best).second) return;
    const int n = m + 2;
    std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a) {
      leq[a] = 1;                                        // bottom
      leq[static_cast<std::size_t>(a) * n + n - 1] = 1;  // top
    }
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if ((best >> (a * m + b)) & 1U) leq[static_cast<std::size_t>(a + 1) * n + b + 1] = 1;
      }
    }
    out.push_back(FiniteLattice::from_relation(n, leq));
  };
  auto grow = [&](auto&& self, int j) -> void {
    if (j == m) {
      emit();
      return;
    }
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << j); ++s) {
      bool closed = true;
      for (int i = 0; i < j && closed; ++i) {
        if (((s >> i) & 1U) && (down[i] & ~s)) closed = false;
      }
      if (!closed) continue;
      down[j] = s;
      self(self, j + 1);
    }
  };
  grow(grow, 0);
}

}  // namespace

const std::vector<CatalogEntry>& lattice_catalog(int max_size) {
  static std::mutex mu;
  static std::array<std::vector<CatalogEntry>, 9> cache;
  static std::array<bool, 9> ready{};
  if (max_size < 1 || max_size > 8) throw std::invalid_argument("catalog sizes range over 1..8");
  std::lock_guard<std::mutex> lock(mu);
  if (!ready[max_size]) {
    std::vector<FiniteLattice> ls{FiniteLattice()};
    for (int m = 0; m + 2 <= max_size; ++m) lattices_with_middle(m, ls);
    for (auto& l : ls) {
      CatalogEntry e{l, is_bounded(l), whitman_W(l).holds, is_distributive(l)};
      cache[max_size].push_back(std::move(e));
    }
    ready[max_size] = true;
  }
  return cache[max_size];
}

}  // namespace freelat
