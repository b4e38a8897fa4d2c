#include "support/corpus.hpp"

#include <prptl/derived.hpp>
#include <prptl/error.hpp>
#include <prptl/parser.hpp>

#include <doctest.h>

using namespace prptl;

namespace {

formula p = formula::atom("p");
formula q = formula::atom("q");

parse_error parse_failure(std::string_view text) {
  try {
    parse_formula(text);
  } catch (const parse_error& e) {
    return e;
  }
  FAIL("expected a parse error for '" << text << "'");
  return parse_error("", {});
}

} // namespace

TEST_SUITE("parser") {

TEST_CASE("formula examples") {
  CHECK(parse_formula("X[3,4] q") == formula::next(time_bound(3, time_value(4)), q));
  CHECK(parse_formula("p ; X[3,4] q") ==
        formula::chop(p, time_bound::zero(), formula::next(time_bound(3, time_value(4)), q)));
  CHECK(parse_formula("empty") == formula::neg(formula::next(time_bound::unit(), formula::top())));
  CHECK(parse_formula("X[1,w] p") == formula::next(time_bound(1, time_value::omega()), p));
  CHECK(parse_formula("X[1,inf] p") == formula::next(time_bound(1, time_value::omega()), p));
}

TEST_CASE("bound shorthands") {
  CHECK(parse_formula("X p") == formula::next(time_bound::unit(), p));
  CHECK(parse_formula("X[2] p") == formula::next(time_bound(2), p));
  CHECK(parse_formula("p ;[1,2] q") == formula::chop(p, time_bound(1, time_value(2)), q));
  CHECK(parse_formula("<> p") == diamond(p));
  CHECK(parse_formula("[] p") == box(p));
  CHECK(parse_formula("<>[1,2] p") == diamond_within(time_bound(1, time_value(2)), p));
  CHECK(parse_formula("[][0,3] p") == box_within(time_bound(0, time_value(3)), p));
}

TEST_CASE("keywords and sugar") {
  CHECK(parse_formula("true") == formula::top());
  CHECK(parse_formula("false") == formula::bottom());
  CHECK(parse_formula("more") == more());
  CHECK(parse_formula("skip") == skip());
  CHECK(parse_formula("len(3)") == len(3));
  CHECK(parse_formula("keep(p)") == keep(p));
  CHECK(parse_formula("halt(p)") == halt(p));
  CHECK(parse_formula("fin(p)") == fin(p));
  CHECK(parse_formula("p U q") == until(p, q));
  CHECK(parse_formula("p U<=2 q") == until_within(2, p, q));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_formula("p | q & p") == formula::disj(p, formula::conj(q, p)));
  CHECK(parse_formula("p & q ; p") == formula::conj(p, formula::chop(q, time_bound::zero(), p)));
  CHECK(parse_formula("p ; q ; p") ==
        formula::chop(formula::chop(p, time_bound::zero(), q), time_bound::zero(), p));
  CHECK(parse_formula("!p ; q") == formula::chop(formula::neg(p), time_bound::zero(), q));
  CHECK(parse_formula("X p ; q") == formula::chop(formula::next(time_bound::unit(), p), time_bound::zero(), q));
  CHECK(parse_formula("(p | q) & p") == formula::conj(formula::disj(p, q), p));
}

TEST_CASE("queries") {
  prob_query a = parse_query("Pr>=0.5 [ <> q ]");
  CHECK(a.cmp == comparator::greater_equal);
  CHECK(a.threshold == rational(1, 2));
  CHECK(a.body == diamond(q));
  prob_query b = parse_query("Pr=0.5 [ p ]");
  CHECK(b.cmp == comparator::equal);
  CHECK(b.body == p);
  CHECK(parse_query("Pr<1/3 [ p ]").threshold == rational(1, 3));
  CHECK(parse_query("Pr>=0.25 [ p ]").threshold == rational(1, 4));
  CHECK(parse_query("Pr<=0.09 [ p ]").threshold == rational(9, 100));
  CHECK(parse_query("Pr<=010/100 [ p ]").threshold == rational(1, 10));
  CHECK(parse_query("Pr>0 [ p ]").cmp == comparator::greater);
  CHECK(parse_query("Pr<=1 [ p ]").cmp == comparator::less_equal);
  CHECK_THROWS_AS(parse_query("Pr>1.5 [ p ]"), parse_error);
  CHECK_THROWS_AS(parse_query("Pr>-0.5 [ p ]"), parse_error);
  CHECK_THROWS_AS(parse_query("Pr=>0.5 [ p ]"), parse_error);
  CHECK_THROWS_AS(parse_query("Pr>=0.5 [ p"), parse_error);
  CHECK_THROWS_AS(parse_query("Pr>=0.5 [ p ] q"), parse_error);
}

TEST_CASE("errors carry a span inside the input and expected tokens") {
  for (std::string_view bad : {"p &", "X[4,3] p", "p ;", "(p", "p q", "X[1,", "true2 & ?", "", "len(x)",
                               "X[99999999999999999999999,1] p", "U", "p ;[2 q"}) {
    parse_error e = parse_failure(bad);
    CHECK(e.span().start <= e.span().end);
    CHECK(e.span().end <= bad.size());
  }
  CHECK_FALSE(parse_failure("p &").expected().empty());
  CHECK(parse_failure("p &").expected().count("identifier"));
  CHECK(parse_failure("X[4,3] p").span().start > 0);
}

TEST_CASE("keywords are not atoms") {
  for (auto kw : {"X", "U", "Pr", "len", "keep"}) CHECK_THROWS_AS(parse_formula(kw), parse_error);
}

TEST_CASE("render examples") {
  CHECK(render(formula::next(time_bound(3, time_value(4)), q)) == "X[3,4] q");
  CHECK(render(empty()) == "empty");
  CHECK(render(formula::chop(p, time_bound::zero(), q)) == "p ; q");
  CHECK(render(formula::bottom()) == "false");
  CHECK(render(formula::next(time_bound(1, time_value::omega()), p)) == "X[1,w] p");
}

TEST_CASE("render round trips random syntax trees") {
  testing::formula_generator gen(99, 5, {"p", "q", "r1", "s_2"}, true);
  for (int k = 0; k < 1000; ++k) {
    formula f = gen.any(6);
    CHECK_MESSAGE(parse_formula(render(f)) == f, render(f));
  }
}

}
