#include "support/corpus.hpp"

#include <prptl/canonical.hpp>
#include <prptl/derived.hpp>
#include <prptl/error.hpp>
#include <prptl/formula.hpp>
#include <prptl/semantics.hpp>

#include <doctest.h>

#include <unordered_set>

using namespace prptl;

namespace {

formula p = formula::atom("p");
formula q = formula::atom("q");
formula r = formula::atom("r");

} // namespace

TEST_SUITE("formula") {

TEST_CASE("time bounds") {
  CHECK_THROWS_AS(time_bound(3, time_value(2)), invalid_argument);
  CHECK(time_bound(2, time_value::omega()).to_string() == "[2,w]");
  CHECK(time_value::omega().predecessor() == time_value::omega());
  CHECK_FALSE(time_value(0).predecessor());
  CHECK(time_value(5) < time_value::omega());
  CHECK(time_bound(3, time_value(4)).decremented() == time_bound(2, time_value(3)));
  CHECK(time_bound(0, time_value(4)).shifted() == time_bound(0, time_value(3)));
  CHECK(time_bound(1, time_value::omega()).decremented() == time_bound(0, time_value::omega()));
  CHECK_THROWS_AS(time_bound(0, time_value(2)).decremented(), invalid_argument);
}

TEST_CASE("constructors and accessors") {
  formula f = formula::chop(p, time_bound(3, time_value(4)), q);
  CHECK(f.is(op::chop));
  CHECK(f.left() == p);
  CHECK(f.right() == q);
  CHECK(f.bound() == time_bound(3, time_value(4)));
  CHECK(f.size() == 3);
  CHECK(formula::next(time_bound::zero(), p) == p);
  CHECK(formula::bottom().is_bottom());
  CHECK(formula::bottom() == formula::neg(formula::top()));
}

TEST_CASE("atoms") {
  CHECK(atoms(p) == std::set<std::string>{"p"});
  CHECK(atoms(formula::chop(p, time_bound(3, time_value(4)), q)) == std::set<std::string>{"p", "q"});
  CHECK(atoms(formula::top()).empty());
}

TEST_CASE("state formulas") {
  CHECK(is_state_formula(formula::conj(p, formula::neg(q))));
  CHECK_FALSE(is_state_formula(formula::next(time_bound::unit(), p)));
  CHECK_FALSE(is_state_formula(empty()));
}

TEST_CASE("structural equality, hash and order agree") {
  testing::formula_generator gen(7, 3);
  std::vector<formula> fs;
  for (int k = 0; k < 300; ++k) fs.push_back(gen.core(3));
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = 0; b < fs.size(); ++b) {
      bool eq = fs[a] == fs[b];
      CHECK(eq == ((fs[a] <=> fs[b]) == 0));
      if (eq) CHECK(fs[a].hash() == fs[b].hash());
      CHECK(((fs[a] <=> fs[b]) < 0) == ((fs[b] <=> fs[a]) > 0));
    }
  std::unordered_set<formula> seen(fs.begin(), fs.end());
  for (const formula& f : fs) CHECK(seen.count(f) == 1);
}

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize(formula::neg(formula::neg(p))) == p);
  CHECK(canonicalize(formula::disj(q, p)) == formula::disj(p, q));
  CHECK(canonicalize(formula::conj(p, formula::conj(q, p))) == formula::conj(p, q));
  CHECK(canonicalize(formula::conj(p, formula::neg(p))) == formula::bottom());
  CHECK(canonicalize(formula::disj(p, formula::neg(p))) == formula::top());
  CHECK(canonicalize(formula::conj(formula::top(), q)) == q);
  CHECK(canonicalize(formula::next(time_bound::unit(), formula::bottom())) == formula::bottom());
  CHECK(canonicalize(formula::chop(formula::bottom(), time_bound::unit(), p)) == formula::bottom());
}

TEST_CASE("canonicalize is idempotent and preserves meaning") {
  testing::formula_generator gen(11, 3);
  for (int k = 0; k < 200; ++k) {
    formula f = gen.core(4);
    formula c = canonicalize(f);
    CHECK(canonicalize(c) == c);
    CHECK(equivalent_on(f, c, testing::two_atoms, 4).equivalent);
  }
}

TEST_CASE("derived operators have their textbook meaning") {
  const std::vector<std::string> ab{"p", "q"};
  auto holds_at = [](const interval& s, std::size_t k, const char* a) { return s[k].count(a) > 0; };
  for_each_interval(ab, 5, [&](const interval& s) {
    const std::size_t j = s.length();
    for (std::size_t i = 0; i <= j; ++i) {
      bool some = false, all = true, p_all_but_last = true, p_exactly_last = true;
      for (std::size_t k = i; k <= j; ++k) {
        some |= holds_at(s, k, "p");
        all &= holds_at(s, k, "p");
        if (k < j) p_all_but_last &= holds_at(s, k, "p");
        p_exactly_last &= holds_at(s, k, "p") == (k == j);
      }
      CHECK(evaluate(s, i, j, diamond(p)) == some);
      CHECK(evaluate(s, i, j, box(p)) == all);
      CHECK(evaluate(s, i, j, empty()) == (i == j));
      CHECK(evaluate(s, i, j, more()) == (i < j));
      CHECK(evaluate(s, i, j, skip()) == (j - i == 1));
      for (std::uint64_t n = 0; n <= 3; ++n) CHECK(evaluate(s, i, j, len(n)) == (j - i == n));
      CHECK(evaluate(s, i, j, fin(p)) == holds_at(s, j, "p"));
      CHECK(evaluate(s, i, j, keep(p)) == p_all_but_last);
      CHECK(evaluate(s, i, j, halt(p)) == p_exactly_last);
      CHECK(evaluate(s, i, j, implies(p, q)) == (!holds_at(s, i, "p") || holds_at(s, i, "q")));
      CHECK(evaluate(s, i, j, iff(p, q)) == (holds_at(s, i, "p") == holds_at(s, i, "q")));

      bool within = false, every = true;
      for (std::size_t l = 1; l <= 2; ++l)
        if (i + l <= j) {
          within |= holds_at(s, i + l, "p");
          every &= holds_at(s, i + l, "p");
        }
      CHECK(evaluate(s, i, j, diamond_within(time_bound(1, time_value(2)), p)) == within);
      CHECK(evaluate(s, i, j, box_within(time_bound(1, time_value(2)), p)) == every);
    }
    return true;
  });
}

TEST_CASE("canonical form ignores construction history") {
  testing::formula_generator a(3, 3), b(3, 3);
  for (int k = 0; k < 100; ++k) {
    formula x = a.core(4), y = b.core(4);
    REQUIRE(x == y);
    CHECK(canonicalize(x) == canonicalize(y));
  }
}

TEST_CASE("negation flips every judgement") {
  testing::formula_generator gen(23, 3);
  std::vector<formula> fs;
  for (int k = 0; k < 40; ++k) fs.push_back(gen.core(3));
  for_each_interval({"p", "q"}, 3, [&](const interval& s) {
    for (const formula& g : fs)
      for (std::size_t i = 0; i <= s.length(); ++i)
        for (std::size_t j = i; j <= s.length(); ++j)
          CHECK(evaluate(s, i, j, formula::neg(g)) != evaluate(s, i, j, g));
    return true;
  });
}

TEST_CASE("bounded box holds vacuously past the end") {
  for_each_interval({"p"}, 5, [&](const interval& s) {
    const std::size_t j = s.length();
    for (std::uint64_t lo = 0; lo <= 3; ++lo)
      for (std::uint64_t hi = lo; hi <= 4; ++hi) {
        formula g = box_within(time_bound(lo, time_value(hi)), p);
        for (std::size_t i = 0; i <= j; ++i) {
          bool want = true;
          for (std::uint64_t l = lo; l <= hi && i + l <= j; ++l) want &= s[i + l].count("p") > 0;
          CHECK(evaluate(s, i, j, g) == want);
        }
      }
    return true;
  });
}

TEST_CASE("until forms") {
  CHECK(until(p, q) == formula::chop(p, time_bound::unit(), q));
  CHECK(until_within(0, p, q) == q);
  CHECK(equivalent_on(until_within(2, p, q),
                      formula::disj(q, formula::chop(box_within(time_bound(0, time_value(1)), p),
                                                     time_bound::unit(), q)),
                      testing::two_atoms, 5)
            .equivalent);
}

TEST_CASE("mk_derived") {
  CHECK(mk_derived("diamond", {p}) == diamond(p));
  CHECK(mk_derived("len", {}, {2}) == len(2));
  CHECK(mk_derived("until_leq", {p, q}, {3}) == until_within(3, p, q));
  CHECK(mk_derived("box_within", {p}, {1, 3}) == box_within(time_bound(1, time_value(3)), p));
  CHECK_THROWS_AS(mk_derived("eventually", {p}), invalid_argument);
  CHECK_THROWS_AS(mk_derived("box", {p, q}), invalid_argument);
  CHECK_THROWS_AS(mk_derived("len", {}, {-1}), invalid_argument);
  CHECK_THROWS_AS(mk_derived("box_within", {p}, {3, 1}), invalid_argument);
  for (auto tag : derived_tags()) CHECK_FALSE(tag.empty());
}

TEST_CASE("empty recognition") {
  CHECK(is_empty_formula(empty()));
  CHECK_FALSE(is_empty_formula(more()));
  CHECK_FALSE(is_empty_formula(r));
}

}
