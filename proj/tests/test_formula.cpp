#include <doctest.h>

#include <random>

#include "freelat/errors.hpp"
#include "freelat/formula.hpp"
#include "freelat/partition.hpp"
#include "freelat/term.hpp"
#include "support.hpp"

using namespace freelat;

namespace {

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 2 : 5);
  const int k = pick(rng);
  if (k <= 2) {
    const auto kind = static_cast<AtomKind>(k);
    return Formula::make_atom(kind, testing::random_term(rng, vars, 1), testing::random_term(rng, vars, 1));
  }
  if (k == 3) return Formula::make_not(random_formula(rng, vars, depth - 1));
  std::vector<Formula> ops{random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)};
  return k == 4 ? Formula::make_and(std::move(ops)) : Formula::make_or(std::move(ops));
}

}  // namespace

TEST_CASE("terms are flattened, sorted and deduplicated") {
  const auto t = parse_term("(y|x)|(x|z)");
  CHECK(to_string(t) == "x|y|z");
  CHECK(parse_term("x&x") == Term::var("x"));
  CHECK(parse_term("x|(y&z)") == parse_term("(z&y)|x"));
  CHECK(parse_term("(x|y)&z").is_meet());
  CHECK(parse_term("x|y&z").size() == parse_term("x|(y&z)").size());
}

TEST_CASE("canonicalization is idempotent and printing round-trips") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> vars{"x", "y", "z", "w"};
  for (int i = 0; i < 500; ++i) {
    const auto t = testing::random_term(rng, vars, 4);
    CHECK(canonical(canonical(t)) == canonical(t));
    CHECK(parse_term(to_string(t)) == t);
    CHECK(dual(dual(t)) == t);
  }
}

TEST_CASE("sentences round-trip through the printer") {
  for (const auto& e : testing::regression_corpus()) {
    const auto s = parse_sentence(e.text);
    CHECK(parse_sentence(to_string(s)) == s);
    CHECK(dual_sentence(dual_sentence(s)) == s);
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Sentence s;
    s.vars = {"x", "y", "z"};
    s.matrix = random_formula(rng, s.vars, 3);
    CHECK(parse_sentence(to_string(s)) == s);
    CHECK(dual_sentence(dual_sentence(s)) == s);
  }
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_sentence("exists x y:\n  x <= y |");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_sentence("exists x: x <= q"), ParseError);
  CHECK_THROWS_AS(parse_term("x |"), ParseError);
  CHECK_THROWS_AS(parse_sentence("x <= y"), ParseError);
}

TEST_CASE("presentations parse with and without a prefix") {
  const auto p = parse_presentation("a <= b|c and d <= a|b and d !<= b|c");
  CHECK(p.vars == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(p.rplus.size() == 2);
  CHECK(p.rminus.size() == 1);
  const auto q = parse_presentation("exists z y x: x = y");
  CHECK(q.vars == std::vector<std::string>{"z", "y", "x"});
  CHECK(q.rplus.size() == 2);
}

TEST_CASE("to_dnf is equivalent to the matrix on small lattices") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vars{"x", "y", "z"};
  const auto& cat = lattice_catalog(6);
  for (int round = 0; round < 40; ++round) {
    Sentence s;
    s.vars = vars;
    s.matrix = random_formula(rng, vars, 3);
    const auto dnf = to_dnf(s);
    for (const auto& entry : cat) {
      const auto& l = entry.lattice;
      const int n = l.size();
      for (int code = 0; code < n * n * n; ++code) {
        testing::Assignment a{{"x", code % n}, {"y", (code / n) % n}, {"z", code / (n * n)}};
        bool any = false;
        for (const auto& p : dnf) any = any || testing::satisfies(l, p, a);
        REQUIRE(testing::eval(l, s.matrix, a) == any);
      }
    }
  }
}

TEST_CASE("to_dnf respects its cap") {
  std::string text = "exists a b c d e f g h:";
  const char* vs = "abcdefgh";
  for (int i = 0; i < 8; i += 2) {
    text += std::string(i ? " and " : " ") + "(" + vs[i] + " <= " + vs[i + 1] + " or " + vs[i + 1] + " <= " + vs[i] + ")";
  }
  const auto s = parse_sentence(text);
  CHECK(to_dnf(s).size() == 16);
  CHECK_THROWS_AS(to_dnf(s, 10), ResourceError);
}

TEST_CASE("dualize negates the matrix") {
  const auto s = parse_sentence("forall x y: x <= x|y");
  const auto d = dualize(s);
  CHECK(d.quantifier == Quantifier::Exists);
  const auto dnf = to_dnf(d);
  REQUIRE(dnf.size() == 1);
  CHECK(dnf[0].rminus.size() == 1);
  CHECK(dnf[0].rplus.empty());
}

TEST_CASE("partitions normalize block ids") {
  const auto p = Partition::from_labels(std::vector<int>{5, 3, 5, 9});
  CHECK(p.block_count() == 3);
  CHECK(p.same(0, 2));
  CHECK(Partition::identity(4).refines(p));
  CHECK(p.refines(Partition::all(4)));
  CHECK_FALSE(p.refines(Partition::identity(4)));
  const std::vector<std::string> names{"x", "y", "z", "m"};
  CHECK(p.to_bracket(names) == "[xz|y|m]");
  CHECK(Partition::parse_bracket("[m|y|zx]", names) == p);
  CHECK(meet(p, Partition::from_labels(std::vector<int>{0, 0, 1, 1})) == Partition::identity(4));
  CHECK(p.restrict_to({0, 2}) == Partition::all(2));
}
