#include <doctest.h>

#include "freelat/errors.hpp"
#include "freelat/pdlkit.hpp"
#include "freelat/refine.hpp"
#include "support.hpp"

using namespace freelat;

namespace {

// Every (filter G, ideal J, coloring of G & J) that satisfies (1)-(8).
std::size_t brute_force_splits(const Realization& r, const Pdl& s) {
  const auto fs = filters(s);
  const auto is = ideals(s);
  const FiniteLattice& l = r.target;
  std::size_t found = 0;
  for (ElemSet g : fs.sets) {
    for (ElemSet j : is.sets) {
      const ElemSet c = g & j;
      if (c == 0) continue;
      std::vector<int> image;
      for_each_elem(c, [&](int e) { image.push_back(r.map[e]); });
      const Interval iv{l.meet_all(image), l.join_all(image)};
      // (1) and (2) pin G and J to the interval; skip the colorings otherwise.
      bool pinned = true;
      for (int e = 0; e < s.size(); ++e) {
        pinned = pinned && contains(g, e) == l.leq(iv.bottom, r.map[e]) && contains(j, e) == l.leq(r.map[e], iv.top);
      }
      if (!pinned) continue;
      REQUIRE(count(c) <= 20);
      for (ElemSet a0 = c;; a0 = (a0 - 1) & c) {
        if (split_conditions_hold(r, s, {g, j, a0, c & ~a0, iv})) ++found;
        if (a0 == 0) break;
      }
    }
  }
  return found;
}

bool is_ideal_of(const Pdl& s, ElemSet part, ElemSet c) {
  bool ok = true;
  for_each_elem(part, [&](int e) { ok = ok && subset_of(s.down(e) & c, part); });
  for (const auto& op : s.joins()) {
    if (subset_of(op.args, part) && contains(c, op.result) && !contains(part, op.result)) ok = false;
  }
  return ok;
}

bool is_filter_of(const Pdl& s, ElemSet part, ElemSet c) {
  bool ok = true;
  for_each_elem(part, [&](int e) { ok = ok && subset_of(s.up(e) & c, part); });
  for (const auto& op : s.meets()) {
    if (subset_of(op.args, part) && contains(c, op.result) && !contains(part, op.result)) ok = false;
  }
  return ok;
}

// The bounded non-distributive lattices with five elements are the pentagon.
bool is_pentagon(const FiniteLattice& l) { return l.size() == 5 && !is_distributive(l) && is_bounded(l); }

}  // namespace

TEST_CASE("example decisions") {
  const Verdict expected[] = {Verdict::Yes, Verdict::No, Verdict::Yes, Verdict::No, Verdict::Yes};
  for (int k = 1; k <= 5; ++k) {
    const auto s = testing::example_pdl(k);
    const auto d = decide_standardized(s);
    CHECK(d.verdict == expected[k - 1]);
    CHECK(d.certificate.has_value() == (d.verdict == Verdict::Yes));
    CHECK(d.violated.has_value() == (d.verdict == Verdict::No));
    if (d.certificate) CHECK(verify_certificate(s, *d.certificate).ok);
  }
}

TEST_CASE("example 5 refines in two steps") {
  const auto s = testing::example_pdl(5);
  const auto d = decide_standardized(s);
  REQUIRE(d.steps.size() == 2);
  CHECK(testing::same_partition(s, d.steps[0].kernel, "[sp|r|q|u|vw|x|t]"));
  CHECK(d.steps[1].kernel.is_identity());
  REQUIRE(d.beta);
  CHECK(d.beta->is_identity());
}

TEST_CASE("example 3 doubles into the pentagon") {
  const auto s = testing::example_pdl(3);
  const auto d = decide_standardized(s);
  REQUIRE(d.steps.size() == 1);
  CHECK(d.steps[0].target_size == 5);
  REQUIRE(d.certificate);
  CHECK(is_pentagon(d.certificate->lattice));
}

TEST_CASE("example 2 is already bounded at delta") {
  const auto s = testing::example_pdl(2);
  const auto br = bounded_reflection(s);
  CHECK(br.steps.empty());
  CHECK(br.beta == br.delta);
}

TEST_CASE("refinement chains shrink strictly and stay bounded") {
  for (int k = 1; k <= 5; ++k) {
    const auto s = testing::example_pdl(k);
    const auto br = bounded_reflection(s);
    CHECK(br.steps.size() <= static_cast<std::size_t>(s.size() - 1));
    Partition prev = br.delta;
    for (const auto& st : br.steps) {
      CHECK(st.kernel.refines(prev));
      CHECK_FALSE(st.kernel == prev);
      prev = st.kernel;
    }
    CHECK(is_bounded(br.final.target));
    CHECK_FALSE(homomorphism_defect(s, br.final.target, br.final.map));
  }
}

TEST_CASE("intermediate targets are bounded") {
  const auto s = testing::example_pdl(5);
  Realization cur = distributive_reflection(s).r;
  while (auto c = find_split(cur, s)) {
    CHECK(split_conditions_hold(cur, s, *c));
    cur = apply_split(cur, *c, s);
    CHECK(is_bounded(cur.target));
  }
}

TEST_CASE("find_split agrees with brute force") {
  for (int k = 1; k <= 5; ++k) {
    const auto s = testing::example_pdl(k);
    Realization cur = distributive_reflection(s).r;
    for (;;) {
      const auto c = find_split(cur, s);
      const auto brute = brute_force_splits(cur, s);
      CHECK_MESSAGE(c.has_value() == (brute > 0), "example ", k);
      if (!c) break;
      cur = apply_split(cur, *c, s);
    }
  }
}

TEST_CASE("the bounded reflection does not depend on search order") {
  for (int k : {3, 5}) {
    const auto s = testing::example_pdl(k);
    const auto base = bounded_reflection(s);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      RefineOptions opts;
      opts.shuffle_seed = seed;
      CHECK(bounded_reflection(s, opts).beta == base.beta);
    }
  }
}

TEST_CASE("lifts through a doubling are homomorphisms over lambda") {
  for (int k = 1; k <= 5; ++k) {
    const auto s = testing::example_pdl(k);
    const auto r0 = distributive_reflection(s).r;
    const FiniteLattice& l = r0.target;
    for (int b = 0; b < l.size(); ++b) {
      for (int a = 0; a < l.size(); ++a) {
        if (!l.leq(b, a)) continue;
        const auto lift = lift_realization(r0, {b, a}, s);
        CHECK_FALSE(homomorphism_defect(s, lift.doubling.doubled, lift.map));
        for (int e = 0; e < s.size(); ++e) CHECK(lift.doubling.lambda[lift.map[e]] == r0.map[e]);

        ElemSet g = 0;
        ElemSet j = 0;
        for (int e = 0; e < s.size(); ++e) {
          if (l.leq(b, r0.map[e])) g |= elem_bit(e);
          if (l.leq(r0.map[e], a)) j |= elem_bit(e);
        }
        const ElemSet c = g & j;
        const ElemSet a1 = lift.gm;
        const ElemSet a0 = c & ~a1;
        CHECK(subset_of(a1, c));
        CHECK(is_ideal_of(s, a0, c));   // (3)
        CHECK(is_filter_of(s, a1, c));  // (5)
        for (const auto& op : s.meets()) {
          if (subset_of(op.args, g) && contains(a0, op.result)) CHECK((op.args & a0) != 0);  // (4)
        }
        for (const auto& op : s.joins()) {
          if (subset_of(op.args, j) && contains(a1, op.result)) CHECK((op.args & a1) != 0);  // (6)
        }
      }
    }
  }
}

TEST_CASE("the example 3 lift embeds into the refined pentagon") {
  const auto s = testing::example_pdl(3);
  const auto r0 = distributive_reflection(s).r;
  const auto c = find_split(r0, s);
  REQUIRE(c);
  const auto lift = lift_realization(r0, c->interval, s);
  const auto pent = apply_split(r0, *c, s);
  CHECK(is_pentagon(pent.target));
  CHECK(pent.kernel.refines(r0.kernel));
  const auto lifted = make_realization(lift.doubling.doubled, lift.map);
  CHECK(lifted.target.size() <= pent.target.size());
}

TEST_CASE("certificates survive JSON and tampering is caught") {
  const auto s = testing::example_pdl(3);
  const auto d = decide_standardized(s);
  const auto j = certificate_to_json(s, d);
  CHECK(verify_certificate_json(s, j).ok);
  CHECK(j.at("trace").size() == 1);

  auto flipped = j;
  auto& pairs = flipped["lattice"]["leq"];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i][0] != pairs[i][1]) {
      pairs.erase(i);
      break;
    }
  }
  auto rep = verify_certificate_json(s, flipped);
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures[0].rfind("lattice axioms", 0) == 0);

  auto remapped = j;
  remapped["map"]["x"] = remapped["map"]["z"].get<int>() == 0 ? 4 : 0;
  CHECK_FALSE(verify_certificate_json(s, remapped).ok);

  auto missing = j;
  missing["map"].erase("x");
  rep = verify_certificate_json(s, missing);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failures[0].rfind("format", 0) == 0);

  // A constant map into M3 preserves everything except boundedness and the negations.
  std::vector<int> map(s.size(), 0);
  const auto m3 = FiniteLattice::diamond();
  rep = verify_certificate(s, m3, map);
  CHECK_FALSE(rep.ok);
  bool saw_bounded = false;
  for (const auto& f : rep.failures) saw_bounded = saw_bounded || f.rfind("boundedness", 0) == 0;
  CHECK(saw_bounded);
}

TEST_CASE("the element cap stops refinement") {
  const auto s = testing::example_pdl(5);
  RefineOptions opts;
  opts.max_elements = 6;
  CHECK_THROWS_AS(decide_standardized(s, opts), ResourceError);
}

TEST_CASE("NO verdicts have no bounded model in small lattices") {
  for (int k : {2, 4}) {
    const auto p = testing::example_presentation(k);
    for (const auto& e : lattice_catalog(6)) {
      if (!e.bounded) continue;
      CHECK_FALSE(testing::find_model(e.lattice, p));
    }
  }
}

TEST_CASE("YES verdicts have a bounded model in small lattices") {
  // Guards the brute-force search used for the NO cross-check.
  for (int k : {1, 3}) {
    const auto p = testing::example_presentation(k);
    bool found = false;
    for (const auto& e : lattice_catalog(8)) {
      if (!e.bounded) continue;
      if (auto a = testing::find_model(e.lattice, p)) {
        CHECK(testing::satisfies(e.lattice, p, *a));
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}
