#include "freelat/refine.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "freelat/errors.hpp"

namespace freelat {

namespace {

ElemSet preimage_of_interval(const Realization& r, Interval iv) {
  ElemSet c = 0;
  for (std::size_t s = 0; s < r.map.size(); ++s) {
    if (r.target.leq(iv.bottom, r.map[s]) && r.target.leq(r.map[s], iv.top)) c |= elem_bit(static_cast<int>(s));
  }
  return c;
}

// Coloring of C = G & J by monotone propagation. The constraints are those
// that make the doubled map a homomorphism: alpha is monotone on C, a meet in
// C is the conjunction of its arguments in C (outside ones count as 1), a
// join in C the disjunction of its arguments in C (outside ones count as 0).
class AlphaSolver {
 public:
  AlphaSolver(const Pdl& s, ElemSet c) : s_(s), c_(c) {}

  // Extends the seed to a full coloring, or nullopt.
  std::optional<std::pair<ElemSet, ElemSet>> solve(ElemSet zero, ElemSet one) const {
    if (!propagate(zero, one)) return std::nullopt;
    const ElemSet open = c_ & ~(zero | one);
    if (open == 0) return std::make_pair(zero, one);
    const int e = std::countr_zero(open);
    if (auto r = solve(zero | elem_bit(e), one)) return r;
    return solve(zero, one | elem_bit(e));
  }

 private:
  bool propagate(ElemSet& zero, ElemSet& one) const {
    for (;;) {
      ElemSet z = zero;
      ElemSet o = one;
      for_each_elem(one, [&](int e) { o |= s_.up(e) & c_; });
      for_each_elem(zero, [&](int e) { z |= s_.down(e) & c_; });
      for (const auto& op : s_.meets()) {
        if (!contains(c_, op.result)) continue;
        const ElemSet in = op.args & c_;
        if (in & z) z |= elem_bit(op.result);
        if (subset_of(in, o)) o |= elem_bit(op.result);
        if (contains(o, op.result)) o |= in;
        const ElemSet open = in & ~o;
        if (contains(z, op.result) && count(open) == 1) z |= open;
      }
      for (const auto& op : s_.joins()) {
        if (!contains(c_, op.result)) continue;
        const ElemSet in = op.args & c_;
        if (in & o) o |= elem_bit(op.result);
        if (subset_of(in, z)) z |= elem_bit(op.result);
        if (contains(z, op.result)) z |= in;
        const ElemSet open = in & ~z;
        if (contains(o, op.result) && count(open) == 1) o |= open;
      }
      if (z & o) return false;
      if (z == zero && o == one) return true;
      zero = z;
      one = o;
    }
  }

  const Pdl& s_;
  ElemSet c_;
};

std::vector<ElemSet> kernel_classes(const Partition& k) {
  std::vector<ElemSet> out;
  for (const auto& block : k.blocks()) {
    ElemSet b = 0;
    for (int e : block) b |= elem_bit(e);
    out.push_back(b);
  }
  return out;
}

}  // namespace

bool split_conditions_hold(const Realization& r, const Pdl& s, const SplitCandidate& c) {
  const FiniteLattice& l = r.target;
  if (!s.is_filter(c.g) || !s.is_ideal(c.j)) return false;
  const ElemSet gj = c.g & c.j;
  if (gj == 0) return false;
  std::vector<int> image;
  for_each_elem(gj, [&](int e) { image.push_back(r.map[e]); });
  const int b = l.meet_all(image);
  const int a = l.join_all(image);
  if (b != c.interval.bottom || a != c.interval.top) return false;
  for (int e = 0; e < s.size(); ++e) {
    if (contains(c.g, e) != l.leq(b, r.map[e])) return false;  // (1)
    if (contains(c.j, e) != l.leq(r.map[e], a)) return false;  // (2)
  }
  const ElemSet a0 = c.a0;
  const ElemSet a1 = c.a1;
  // (7)
  if ((a0 & a1) != 0 || (a0 | a1) != gj) return false;
  const auto classes = kernel_classes(r.kernel);
  for (ElemSet k : classes) {
    if ((k & gj) != 0 && !subset_of(k, gj)) return false;
  }
  // (3) ideal of G & J.
  bool ok = true;
  for_each_elem(a0, [&](int e) { ok = ok && subset_of(s.down(e) & gj, a0); });
  for (const auto& op : s.joins()) {
    if (subset_of(op.args, a0) && !contains(a0, op.result)) ok = false;
  }
  // (4) meet prime in G.
  for (const auto& op : s.meets()) {
    if (subset_of(op.args, c.g) && contains(a0, op.result) && (op.args & a0) == 0) ok = false;
  }
  // (5) filter of G & J.
  for_each_elem(a1, [&](int e) { ok = ok && subset_of(s.up(e) & gj, a1); });
  for (const auto& op : s.meets()) {
    if (subset_of(op.args, a1) && !contains(a1, op.result)) ok = false;
  }
  // (6) join prime in J.
  for (const auto& op : s.joins()) {
    if (subset_of(op.args, c.j) && contains(a1, op.result) && (op.args & a1) == 0) ok = false;
  }
  if (!ok) return false;
  // (8)
  return std::any_of(classes.begin(), classes.end(), [&](ElemSet k) { return (k & a0) && (k & a1); });
}

std::optional<SplitCandidate> find_split(const Realization& r, const Pdl& s, const RefineOptions& opts) {
  const FiniteLattice& l = r.target;
  const int n = l.size();
  std::mt19937_64 rng(opts.shuffle_seed.value_or(0));

  // Classes that merge a violated negation come first.
  std::vector<ElemSet> classes;
  for (ElemSet k : kernel_classes(r.kernel)) {
    if (count(k) > 1) classes.push_back(k);
  }
  std::vector<ElemSet> urgent;
  for (const auto& ng : s.negs()) {
    if (r.kernel.same(ng.uv, ng.v)) {
      for (ElemSet k : classes) {
        if (contains(k, ng.v) && std::find(urgent.begin(), urgent.end(), k) == urgent.end()) urgent.push_back(k);
      }
    }
  }
  for (ElemSet k : classes) {
    if (std::find(urgent.begin(), urgent.end(), k) == urgent.end()) urgent.push_back(k);
  }
  classes = std::move(urgent);
  if (opts.shuffle_seed) std::shuffle(classes.begin(), classes.end(), rng);

  std::set<ElemSet> tried;
  for (ElemSet k : classes) {
    const int p = r.map[std::countr_zero(k)];
    // Intervals around p, smallest first.
    std::vector<std::tuple<int, int, int>> intervals;
    for (int b = 0; b < n; ++b) {
      if (!l.leq(b, p)) continue;
      for (int a = 0; a < n; ++a) {
        if (!l.leq(p, a)) continue;
        int size = 0;
        for (int x = 0; x < n; ++x) size += l.leq(b, x) && l.leq(x, a);
        intervals.emplace_back(size, b, a);
      }
    }
    std::sort(intervals.begin(), intervals.end());
    if (opts.shuffle_seed) std::shuffle(intervals.begin(), intervals.end(), rng);

    for (const auto& [size, b, a] : intervals) {
      const Interval iv{b, a};
      const ElemSet c = preimage_of_interval(r, iv);
      std::vector<int> image;
      for_each_elem(c, [&](int e) { image.push_back(r.map[e]); });
      if (l.meet_all(image) != b || l.join_all(image) != a) continue;
      if (!tried.insert(c).second) continue;

      std::vector<ElemSet> inside;
      for (ElemSet q : classes) {
        if (subset_of(q, c)) inside.push_back(q);
      }
      const AlphaSolver solver(s, c);
      for (ElemSet q : inside) {
        std::vector<std::pair<int, int>> seeds;
        for_each_elem(q, [&](int x) {
          for_each_elem(q, [&](int y) {
            if (x != y) seeds.emplace_back(x, y);
          });
        });
        if (opts.shuffle_seed) std::shuffle(seeds.begin(), seeds.end(), rng);
        for (auto [x, y] : seeds) {
          auto coloring = solver.solve(elem_bit(x), elem_bit(y));
          if (!coloring) continue;
          SplitCandidate cand;
          for (int e = 0; e < s.size(); ++e) {
            if (l.leq(b, r.map[e])) cand.g |= elem_bit(e);
            if (l.leq(r.map[e], a)) cand.j |= elem_bit(e);
          }
          cand.a0 = coloring->first;
          cand.a1 = coloring->second;
          cand.interval = iv;
          return cand;
        }
      }
    }
  }
  return std::nullopt;
}

Realization apply_split(const Realization& r, const SplitCandidate& c, const Pdl& s, const RefineOptions& opts) {
  const FiniteLattice& l = r.target;
  int interval_size = 0;
  for (int x = 0; x < l.size(); ++x) {
    interval_size += l.leq(c.interval.bottom, x) && l.leq(x, c.interval.top);
  }
  if (static_cast<std::size_t>(l.size() + interval_size) > opts.max_elements) {
    throw ResourceError("doubling step would exceed the element cap of " + std::to_string(opts.max_elements));
  }
  const DoublingResult d = double_interval(l, c.interval);
  std::vector<int> map(s.size());
  for (int e = 0; e < s.size(); ++e) {
    map[e] = contains(c.a1, e) ? d.lift1[r.map[e]] : d.lift0[r.map[e]];
  }
  if (auto defect = homomorphism_defect(s, d.doubled, map)) {
    throw InvariantViolation("split does not give a PDL homomorphism: " + *defect);
  }
  Realization out = make_realization(d.doubled, map);
  if (!out.kernel.refines(r.kernel) || out.kernel == r.kernel) {
    throw InvariantViolation("split does not refine the kernel");
  }
  return out;
}

BoundedReflection refine_to_bounded(const Realization& start, const Pdl& s, const RefineOptions& opts) {
  BoundedReflection out;
  out.delta = start.kernel;
  out.initial = start;
  Realization cur = start;
  while (auto c = find_split(cur, s, opts)) {
    Realization next = apply_split(cur, *c, s, opts);
    out.steps.push_back(RefineStep{next.kernel, c->interval, c->a0, c->a1, next.target.size()});
    cur = std::move(next);
    if (static_cast<int>(out.steps.size()) > std::max(0, s.size() - 1)) {
      throw InvariantViolation("refinement chain is longer than |S| - 1");
    }
  }
  out.beta = cur.kernel;
  out.final = std::move(cur);
  return out;
}

BoundedReflection bounded_reflection(const Pdl& s, const RefineOptions& opts) {
  return refine_to_bounded(distributive_reflection(s).r, s, opts);
}

Decision decide_standardized(const Pdl& s, const RefineOptions& opts) {
  Decision d;
  const DistributiveReflection dr = distributive_reflection(s);
  d.delta = dr.delta;
  auto first_violation = [&](const Partition& k) -> std::optional<NegPair> {
    const auto ok = negs_satisfied(k, s);
    for (std::size_t i = 0; i < ok.size(); ++i) {
      if (!ok[i]) return s.negs()[i];
    }
    return std::nullopt;
  };
  if (!first_violation(dr.delta)) {
    d.verdict = Verdict::Yes;
    d.certificate = Certificate{dr.r.target, dr.r.map};
    return d;
  }
  BoundedReflection br = refine_to_bounded(dr.r, s, opts);
  d.beta = br.beta;
  d.steps = std::move(br.steps);
  d.violated = first_violation(br.beta);
  if (!d.violated) {
    d.verdict = Verdict::Yes;
    d.certificate = Certificate{br.final.target, br.final.map};
  }
  return d;
}

LiftResult lift_realization(const Realization& r0, Interval iv, const Pdl& s) {
  const FiniteLattice& l = r0.target;
  LiftResult out;
  out.doubling = double_interval(l, iv);
  auto in_i = [&](int e) { return l.leq(iv.bottom, r0.map[e]) && l.leq(r0.map[e], iv.top); };
  ElemSet inside = 0;
  for (int e = 0; e < s.size(); ++e) {
    if (in_i(e)) inside |= elem_bit(e);
  }
  auto above = [&](int e) { return l.leq(iv.bottom, r0.map[e]) && !l.leq(r0.map[e], iv.top); };
  auto below = [&](int e) { return l.leq(r0.map[e], iv.top) && !l.leq(iv.bottom, r0.map[e]); };

  for (bool changed = true; changed;) {
    changed = false;
    ElemSet gm = out.gm;
    for_each_elem(out.gm, [&](int e) { gm |= s.up(e) & inside; });
    for (const auto& op : s.meets()) {
      bool forced = true;
      for_each_elem(op.args, [&](int u) { forced = forced && (above(u) || contains(out.gm, u)); });
      if (forced) gm |= s.up(op.result) & inside;
    }
    ElemSet lj = out.lj;
    for_each_elem(out.lj, [&](int e) { lj |= s.down(e) & inside; });
    for (const auto& op : s.joins()) {
      bool forced = true;
      for_each_elem(op.args, [&](int v) { forced = forced && (below(v) || contains(out.lj, v)); });
      if (forced) lj |= s.down(op.result) & inside;
    }
    changed = gm != out.gm || lj != out.lj;
    out.gm = gm;
    out.lj = lj;
  }
  if (out.gm & out.lj) throw InvariantViolation("forced sets GM and LJ intersect");
  out.map.resize(s.size());
  for (int e = 0; e < s.size(); ++e) {
    out.map[e] = contains(out.gm, e) ? out.doubling.lift1[r0.map[e]] : out.doubling.lift0[r0.map[e]];
  }
  return out;
}

VerifyReport verify_certificate(const Pdl& s, const FiniteLattice& l, const std::vector<int>& map) {
  VerifyReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.failures.push_back(std::move(why));
  };
  try {
    (void)FiniteLattice::from_relation(l.size(), l.relation());
  } catch (const InvalidLattice& e) {
    fail(std::string("lattice axioms: ") + e.what());
    return rep;
  }
  if (!is_lower_bounded(l)) fail("boundedness: D(L) != L");
  if (!is_upper_bounded(l)) fail("boundedness: dual D(L) != L");
  if (auto defect = homomorphism_defect(s, l, map)) {
    fail("homomorphism: " + *defect);
    return rep;
  }
  for (const auto& ng : s.negs()) {
    if (l.leq(map[ng.u], map[ng.v])) fail("negation collapses: " + to_string(ng.source));
  }
  return rep;
}

VerifyReport verify_certificate(const Pdl& s, const Certificate& c) { return verify_certificate(s, c.lattice, c.map); }

nlohmann::json certificate_to_json(const Pdl& s, const Decision& d) {
  nlohmann::json j;
  if (!d.certificate) return j;
  j["lattice"] = d.certificate->lattice.to_json();
  nlohmann::json m = nlohmann::json::object();
  for (int e = 0; e < s.size(); ++e) m[s.name(e)] = d.certificate->map[e];
  j["map"] = m;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& st : d.steps) {
    trace.push_back({{"partition", bracket(s, st.kernel)},
                     {"interval", {st.interval.bottom, st.interval.top}},
                     {"target_size", st.target_size}});
  }
  j["trace"] = trace;
  return j;
}

Certificate certificate_from_json(const Pdl& s, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("lattice") || !j.contains("map")) {
    throw std::invalid_argument("certificate needs fields lattice and map");
  }
  Certificate c;
  c.lattice = FiniteLattice::from_json(j.at("lattice"));
  c.map.assign(s.size(), -1);
  for (int e = 0; e < s.size(); ++e) {
    if (!j.at("map").contains(s.name(e))) throw std::invalid_argument("certificate map misses " + s.name(e));
    c.map[e] = j.at("map").at(s.name(e)).get<int>();
  }
  return c;
}

VerifyReport verify_certificate_json(const Pdl& s, const nlohmann::json& j) {
  try {
    return verify_certificate(s, certificate_from_json(s, j));
  } catch (const InvalidLattice& e) {
    return {false, {std::string("lattice axioms: ") + e.what()}};
  } catch (const std::exception& e) {
    return {false, {std::string("format: ") + e.what()}};
  }
}

}  // namespace freelat
