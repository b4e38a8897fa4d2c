#include "support/corpus.hpp"

#include <prptl/derived.hpp>
#include <prptl/error.hpp>
#include <prptl/parser.hpp>
#include <prptl/semantics.hpp>
#include <prptl/tnfg.hpp>

#include <doctest.h>

using namespace prptl;

namespace {

formula f(std::string_view text) { return parse_formula(text); }

bool has_edge(const tnfg& g, std::size_t s, const guard& c, std::size_t t) {
  for (const auto& e : g.edges())
    if (e.source == s && e.target == t && e.condition == c) return true;
  return false;
}

} // namespace

TEST_SUITE("tnfg") {

TEST_CASE("graph of an atom") {
  tnfg g = build_tnfg(f("p"), {"p"});
  CHECK(g.nodes().size() == 3);
  CHECK(g.edges().size() == 4);
  auto root = g.find({f("p"), time_bound::zero(), false});
  auto eps = g.terminal();
  auto top = g.find({formula::top(), time_bound::zero(), false});
  REQUIRE(root);
  REQUIRE(eps);
  REQUIRE(top);
  CHECK(*root == g.root());
  guard p = guard::literal("p", true);
  CHECK(has_edge(g, *root, p, *eps));
  CHECK(has_edge(g, *root, p, *top));
  CHECK(has_edge(g, *top, guard{}, *eps));
  CHECK(has_edge(g, *top, guard{}, *top));
}

TEST_CASE("graph of empty") {
  tnfg g = build_tnfg(empty(), {});
  CHECK(g.nodes().size() == 2);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0].source == g.root());
  CHECK(g.edges()[0].target == *g.terminal());
  CHECK(g.edges()[0].condition.is_true());
}

TEST_CASE("delayed nodes count down") {
  tnfg g = build_tnfg(f("X[4,5] q"), {"p", "q"});
  auto delayed = g.find({f("q"), time_bound(3, time_value(4)), false});
  REQUIRE(delayed);
  CHECK(has_edge(g, g.root(), guard{}, *delayed));
  auto next = g.find({f("q"), time_bound(2, time_value(3)), false});
  REQUIRE(next);
  CHECK(has_edge(g, *delayed, guard{}, *next));
  for (const auto& e : g.edges()) {
    const tnfg_node& s = g.nodes()[e.source];
    const tnfg_node& t = g.nodes()[e.target];
    if (s.delay.lower() > 0) {
      CHECK(e.condition.is_true());
      CHECK(t.state_formula == s.state_formula);
      CHECK(t.delay == s.delay.decremented());
    }
  }
}

TEST_CASE("outgoing guards of undelayed nodes are exclusive") {
  for (const formula& g0 : testing::bounded_corpus(6)) {
    tnfg g = build_tnfg(g0, testing::two_atoms);
    for (std::size_t n = 0; n < g.nodes().size(); ++n) {
      if (g.nodes()[n].delay != time_bound::zero()) continue;
      auto out = g.outgoing(n);
      for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b) {
          const auto& x = g.edges()[out[a]];
          const auto& y = g.edges()[out[b]];
          bool to_terminal = x.target == g.terminal() || y.target == g.terminal();
          if (!to_terminal) CHECK_FALSE(guard::conj(x.condition, y.condition));
        }
    }
  }
}

TEST_CASE("accepted words match the semantics") {
  auto fs = testing::bounded_corpus(6);
  if (fs.size() > 25) fs.erase(fs.begin() + 25, fs.end());
  for (const formula& g0 : fs) {
    tnfg g = build_tnfg(g0, testing::two_atoms);
    for_each_interval({"p", "q"}, 4, [&](const interval& s) {
      CHECK_MESSAGE(accepts(g, s) == evaluate(s, 0, s.length(), g0), render(g0));
      return true;
    });
  }
}

TEST_CASE("ticking a delayed node reaches an undelayed window") {
  tnfg g = build_tnfg(f("X[4,6] q ;[2,3] p"), {"p", "q"});
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    std::uint64_t a = g.nodes()[n].delay.lower();
    std::size_t at = n;
    for (std::uint64_t k = 0; k < a; ++k) {
      auto out = g.outgoing(at);
      REQUIRE(out.size() == 1);
      CHECK(g.edges()[out[0]].condition.is_true());
      at = g.edges()[out[0]].target;
    }
    CHECK(g.nodes()[at].delay.lower() == 0);
  }
}

TEST_CASE("waiting nodes keep a wait edge") {
  tnfg g = build_tnfg(f("X[1,3] q"), {"q"});
  auto window = g.find({f("q"), time_bound(0, time_value(2)), false});
  auto later = g.find({f("q"), time_bound(0, time_value(1)), false});
  REQUIRE(window);
  REQUIRE(later);
  CHECK(has_edge(g, *window, guard{}, *later));
  tnfg h = build_tnfg(f("X[1,w] q"), {"q"});
  auto forever = h.find({f("q"), time_bound(0, time_value::omega()), false});
  REQUIRE(forever);
  CHECK(has_edge(h, *forever, guard{}, *forever));
}

TEST_CASE("expanding again adds nothing") {
  for (auto text : {"p ; X[4,5] q", "<> q", "keep(p)", "X[1,w] q"}) {
    tnfg g = build_tnfg(f(text), {"p", "q"});
    for (const auto& n : g.nodes()) {
      if (n.terminal) continue;
      tnfg sub = build_tnfg(n.delay.is_zero() ? n.state_formula : formula::next(n.delay, n.state_formula), {"p", "q"});
      for (const auto& m : sub.nodes())
        if (!(m == sub.nodes()[sub.root()])) CHECK_MESSAGE(g.find(m), text);
    }
  }
}

TEST_CASE("probabilities") {
  tnfg g = build_tnfg(f("p"), {"p"});
  tnfg h = attach_probabilities(g, {{0, rational(1, 2)}});
  REQUIRE(h.edges()[0].probability);
  CHECK(*h.edges()[0].probability == rational(1, 2));
  CHECK_FALSE(h.edges()[1].probability);
  tnfg same = attach_probabilities(g, {});
  for (const auto& e : same.edges()) CHECK_FALSE(e.probability);
  CHECK_THROWS_AS(attach_probabilities(g, {{0, rational(3, 2)}}), invalid_argument);
  CHECK_THROWS_AS(attach_probabilities(g, {{0, rational(-1, 2)}}), invalid_argument);
  CHECK_THROWS_AS(attach_probabilities(g, {{99, rational(1, 2)}}), invalid_argument);
  CHECK(to_dot(h).find("1/2") != std::string::npos);
}

TEST_CASE("dot output") {
  std::string a = to_dot(build_tnfg(empty(), {}));
  CHECK(a.starts_with("digraph"));
  CHECK(a == to_dot(build_tnfg(empty(), {})));
  std::string b = to_dot(build_tnfg(f("p"), {"p"}));
  CHECK(b.find("\"eps\"") != std::string::npos);
  CHECK(b.find("doublecircle") != std::string::npos);
  CHECK(b.find("p @ [0,0]") != std::string::npos);
  CHECK(b == to_dot(build_tnfg(f("p"), {"p"})));
}

TEST_CASE("node limit") {
  CHECK_THROWS_AS(build_tnfg(f("p ; X[4,5] q"), {"p", "q"}, 3), budget_exceeded);
  CHECK_THROWS_AS(build_tnfg(f("p & r"), {"p"}), invalid_argument);
}

}
