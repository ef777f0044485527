#include <doctest.h>

#include <random>

#include "freelat/errors.hpp"
#include "freelat/standardize.hpp"
#include "support.hpp"

using namespace freelat;

namespace {

bool standard_shape(const Literal& l) {
  if (l.lhs.is_join() || l.rhs.is_meet()) return false;
  return l.lhs.is_var() || l.rhs.is_var();
}

std::vector<Presentation> sample_presentations() {
  std::vector<Presentation> out;
  for (int k = 1; k <= 4; ++k) out.push_back(testing::example_presentation(k));
  for (const char* text : {"x&y <= z and x !<= z and y !<= z", "x <= y|z and x !<= y and x !<= z",
                           "x&y <= z|w and x !<= z|w", "x|(y&z) !<= (x|y)&(x|z)", "x&(y|z) !<= (x&y)|(x&z)",
                           "x&y <= x&z and x&y !<= z and y|z !<= x"}) {
    out.push_back(parse_presentation(text));
  }
  std::mt19937_64 rng(5);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 12; ++i) {
    Presentation p;
    p.vars = vars;
    p.rplus.push_back({LiteralKind::Leq, testing::random_term(rng, vars, 2), testing::random_term(rng, vars, 2)});
    p.rminus.push_back({LiteralKind::NLeq, testing::random_term(rng, vars, 2), testing::random_term(rng, vars, 2)});
    p.normalize();
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("negations expand into the three standard shapes") {
  const Literal l{LiteralKind::NLeq, parse_term("x&(y|z)"), parse_term("(x&y)|w")};
  const auto d = expand_negation(l);
  REQUIRE_FALSE(d.empty());
  for (const auto& conj : d) {
    for (const auto& lit : conj) CHECK(standard_shape(lit));
  }
  const auto j = expand_negation({LiteralKind::NLeq, parse_term("x|y"), parse_term("z")});
  CHECK(j.size() == 2);
  const auto m = expand_negation({LiteralKind::NLeq, parse_term("x&y"), parse_term("z|w")});
  REQUIRE(m.size() == 1);
  CHECK(m[0].size() == 4);
}

TEST_CASE("outputs are standardized and have standard negations") {
  for (const auto& p : sample_presentations()) {
    for (const auto& b : standardize(p)) {
      const auto s = build_pdl(b);
      CHECK(is_standardized(s));
      CHECK_FALSE(find_w_failure(s));
      for (const auto& l : b.rminus) CHECK(standard_shape(l));
      CHECK(b.vars == p.vars);
    }
  }
}

TEST_CASE("inconsistent input gives no branches") {
  CHECK(standardize(parse_presentation("a <= b|c and d <= a|b and d !<= b|c")).empty());
  CHECK(standardize(parse_presentation("x <= y and x !<= y")).empty());
}

TEST_CASE("rule 1 splits a W-failure") {
  const auto p = parse_presentation("x&y <= z|w and x !<= z and x !<= w");
  const auto s = build_pdl(p);
  CHECK(find_w_failure(s));
  const auto out = standardize(p);
  CHECK(out.size() >= 2);
  for (const auto& b : out) CHECK(b.rplus.size() > p.rplus.size());
}

TEST_CASE("occurrence is preserved in small Whitman lattices") {
  std::vector<const FiniteLattice*> lats;
  for (const auto& e : lattice_catalog(6)) {
    if (e.whitman) lats.push_back(&e.lattice);
  }
  REQUIRE(lats.size() > 5);
  for (const auto& p : sample_presentations()) {
    const auto branches = standardize(p);
    for (const auto* l : lats) {
      const bool direct = testing::find_model(*l, p).has_value();
      bool via = false;
      for (const auto& b : branches) via = via || testing::find_model(*l, b).has_value();
      CHECK_MESSAGE(direct == via, to_string(p));
    }
  }
}

TEST_CASE("the branch cap is enforced") {
  StandardizeOptions opts;
  opts.max_branches = 2;
  CHECK_THROWS_AS(standardize(parse_presentation("x|y|z !<= w&u&v"), opts), ResourceError);
}
