#include "support/corpus.hpp"

#include <prptl/dtmc.hpp>
#include <prptl/error.hpp>

#include <doctest.h>

#include <string>

using namespace prptl;

namespace {

const char* coin_text = R"(# fair coin until heads
states: 2
init: 0 1
trans: 0 0 1/2
trans: 0 1 1/2
trans: 1 1 1
label: 1 q
)";

std::string error_of(std::string_view text) {
  try {
    load_dtmc(text);
  } catch (const error& e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_SUITE("dtmc") {

TEST_CASE("loading the coin") {
  dtmc m = load_dtmc(coin_text);
  CHECK(m == testing::coin());
  CHECK(m.state_count() == 2);
  CHECK(m.initial()[0] == 1);
  CHECK(m.successors(0).size() == 2);
  CHECK(m.label(1) == state{"q"});
  CHECK(m.propositions() == std::set<std::string>{"q"});
}

TEST_CASE("save round trip") {
  for (const dtmc& m : {testing::coin(), testing::chain3(), testing::chain5(), testing::knuth_yao()})
    CHECK(load_dtmc(save_dtmc(m)) == m);
}

TEST_CASE("validation errors") {
  std::string bad_row = coin_text;
  bad_row.replace(bad_row.find("0 0 1/2"), 7, "0 0 0.6");
  bad_row.replace(bad_row.find("0 1 1/2"), 7, "0 1 0.5");
  std::string msg = error_of(bad_row);
  CHECK(msg.find("state 0") != std::string::npos);
  CHECK(msg.find("11/10") != std::string::npos);

  CHECK_FALSE(error_of(std::string(coin_text) + "label: 5 p\n").empty());
  CHECK_FALSE(error_of(std::string(coin_text) + "trans: 1 1 1\n").empty());
  CHECK_FALSE(error_of("states: 1\ntrans: 0 0 1\n").empty());
  CHECK_FALSE(error_of("states: 1\ninit: 0 1/2\ntrans: 0 0 1\n").empty());
  CHECK_FALSE(error_of("states: 1\ninit: 0 1\ntrans: 0 3 1\n").empty());
  CHECK_FALSE(error_of("states: 1\ninit: 0 1\nfoo: 1\n").empty());
  CHECK_FALSE(error_of("states: x\n").empty());
  CHECK_THROWS_AS(dtmc(1, {{0, 1}}, {{0, 0, rational(1, 2)}}, {{}}), invalid_argument);
  CHECK_THROWS_AS(dtmc(1, {{0, 1}}, {{0, 0, 1}}, {{}, {}}), invalid_argument);
}

TEST_CASE("sampling") {
  dtmc m = testing::coin();
  labeled_path zero = sample_path(m, 0, 42);
  CHECK(zero.states == std::vector<std::size_t>{0});
  CHECK(zero.labels.length() == 0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    labeled_path path = sample_path(m, 20, seed);
    CHECK(path.states.size() == 21);
    bool absorbed = false;
    for (std::size_t s : path.states) {
      if (absorbed) CHECK(s == 1);
      absorbed |= s == 1;
    }
    CHECK(sample_path(m, 20, seed).states == path.states);
  }
}

TEST_CASE("sampled steps follow positive transitions") {
  for (const dtmc& m : {testing::chain3(), testing::chain5(), testing::knuth_yao()}) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
      labeled_path path = sample_path(m, 12, rng);
      CHECK(m.initial()[path.states[0]] > 0);
      for (std::size_t t = 0; t + 1 < path.states.size(); ++t) {
        bool found = false;
        for (const auto& tr : m.successors(path.states[t]))
          found |= tr.target == path.states[t + 1] && tr.probability > 0;
        CHECK(found);
        CHECK(path.labels[t] == m.label(path.states[t]));
      }
    }
  }
}

TEST_CASE("rows sum to one exactly") {
  for (const dtmc& m : {testing::coin(), testing::chain3(), testing::chain5(), testing::knuth_yao()})
    for (std::size_t s = 0; s < m.state_count(); ++s) {
      rational sum = 0;
      for (const auto& tr : m.successors(s)) sum += tr.probability;
      CHECK(sum == 1);
    }
}

TEST_CASE("sampling frequencies") {
  dtmc m = testing::coin();
  std::size_t heads = 0;
  const std::size_t n = 100000;
  for (std::uint64_t seed = 0; seed < n; ++seed) heads += sample_path(m, 1, seed).states[1] == 1;
  CHECK(static_cast<double>(heads) / n == doctest::Approx(0.5).epsilon(0.02));
}

}
