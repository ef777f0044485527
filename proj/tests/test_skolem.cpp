#include <doctest.h>

#include "freelat/errors.hpp"
#include "freelat/skolem.hpp"
#include "support.hpp"

using namespace freelat;

namespace {

RelationalQuasilattice closure_of(const Presentation& p) { return close(subterm_universe(p), p.rplus, p.rminus); }

void check_lub_glb(const Pdl& s) {
  for (const auto& op : s.joins()) {
    ElemSet upper = s.all();
    for_each_elem(op.args, [&](int a) { upper &= s.up(a); });
    CHECK(upper == s.up(op.result));
  }
  for (const auto& op : s.meets()) {
    ElemSet lower = s.all();
    for_each_elem(op.args, [&](int a) { lower &= s.down(a); });
    CHECK(lower == s.down(op.result));
  }
}

}  // namespace

TEST_CASE("the inconsistent presentation is detected with its forced pair") {
  const auto p = parse_presentation("a <= b|c and d <= a|b and d !<= b|c");
  const auto q = closure_of(p);
  const auto r = consistent(q, p.rminus);
  CHECK_FALSE(r.consistent);
  REQUIRE(r.violated);
  CHECK(to_string(*r.violated) == "d !<= b|c");
  CHECK_THROWS_AS(build_pdl(p), InconsistentPresentation);
}

TEST_CASE("closure is idempotent and monotone") {
  for (int k = 1; k <= 5; ++k) {
    const auto p = testing::example_presentation(k);
    const auto q = closure_of(p);
    std::vector<Literal> derived;
    for (int a = 0; a < q.size(); ++a) {
      for (int b = 0; b < q.size(); ++b) {
        if (q.le(a, b)) derived.push_back({LiteralKind::Leq, q.universe[a], q.universe[b]});
      }
    }
    const auto again = close(q.universe, derived, p.rminus);
    CHECK(again.leq == q.leq);

    // One extra pair never removes a derived inclusion.
    auto more = p.rplus;
    more.push_back({LiteralKind::Leq, q.universe.front(), q.universe.back()});
    const auto bigger = close(q.universe, more, p.rminus);
    for (int a = 0; a < q.size(); ++a) {
      for (int b = 0; b < q.size(); ++b) {
        if (q.le(a, b)) CHECK(bigger.le(a, b));
      }
    }
  }
}

TEST_CASE("closure derives lattice consequences") {
  const auto p = parse_presentation("x <= y and y <= z");
  const auto q = closure_of(p);
  CHECK(q.le(Term::var("x"), Term::var("z")));
  CHECK_FALSE(q.le(Term::var("z"), Term::var("x")));

  const auto r = parse_presentation("x <= y and y&z <= w and x&z !<= w");
  const auto qr = closure_of(r);
  CHECK(qr.le(parse_term("x&z"), parse_term("y&z")));
  CHECK(qr.le(parse_term("x&z"), Term::var("w")));
  CHECK_FALSE(consistent(qr, r.rminus).consistent);
}

TEST_CASE("quotients of the examples are well formed") {
  for (int k = 1; k <= 5; ++k) {
    const auto s = build_pdl(testing::example_presentation(k));
    check_lub_glb(s);
    for (int a = 0; a < s.size(); ++a) {
      CHECK(s.leq(a, a));
      for (const Term& t : s.members(a)) CHECK(s.element_of(t) == a);
      for (int b = 0; b < s.size(); ++b) {
        if (a != b) CHECK_FALSE((s.leq(a, b) && s.leq(b, a)));
      }
    }
    for (const auto& n : s.negs()) CHECK_FALSE(s.leq(n.uv, n.v));
    for (const auto& [name, e] : s.gens()) CHECK(s.element_of(Term::var(name)) == e);
  }
}

TEST_CASE("example 1 has the four named classes") {
  const auto s = build_pdl(testing::example_presentation(1));
  const auto named = s.named_elements();
  std::vector<std::string> names;
  for (int e : named) names.push_back(s.name(e));
  CHECK(names == std::vector<std::string>{"x", "y", "z", "t"});
  const int t = s.gens().at("t");
  CHECK(s.formally_join(t));
  CHECK(s.join_of(elem_bit(s.gens().at("x")) | elem_bit(s.gens().at("y"))) == t);
  CHECK(s.join_of(elem_bit(s.gens().at("x")) | elem_bit(s.gens().at("z"))) == t);
}

TEST_CASE("skolem_wp is a preorder compatible with the defined operations") {
  for (int k = 1; k <= 5; ++k) {
    const auto s = build_pdl(testing::example_presentation(k));
    const int n = s.size();
    std::vector<std::vector<char>> wp(n, std::vector<char>(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        wp[a][b] = skolem_wp(s, a, b);
        if (s.leq(a, b)) CHECK(wp[a][b]);
      }
    }
    for (int a = 0; a < n; ++a) {
      CHECK(wp[a][a]);
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          if (wp[a][b] && wp[b][c]) CHECK(wp[a][c]);
        }
      }
    }
    for (const auto& op : s.joins()) {
      for (int c = 0; c < n; ++c) {
        bool all = true;
        for_each_elem(op.args, [&](int a) { all = all && wp[a][c]; });
        CHECK(all == static_cast<bool>(wp[op.result][c]));
      }
    }
  }
}

TEST_CASE("skolem_wp on compound terms") {
  const auto s = build_pdl(testing::example_presentation(1));
  CHECK(skolem_wp(s, parse_term("x|y"), parse_term("y|z")));
  CHECK(skolem_wp(s, parse_term("x"), parse_term("y|z")));
  CHECK_FALSE(skolem_wp(s, parse_term("x"), parse_term("y")));
  CHECK_FALSE(skolem_wp(s, parse_term("x|y"), parse_term("x&y")));
}

TEST_CASE("oversized quotients raise a resource error") {
  std::string text = "exists";
  for (int i = 0; i < 70; ++i) text += " v" + std::to_string(i);
  text += ": v0 !<= v1";
  CHECK_THROWS_AS(build_pdl(to_dnf(parse_sentence(text)).at(0)), ResourceError);
}
