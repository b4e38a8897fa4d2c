#pragma once

#include <prptl/rational.hpp>
#include <prptl/semantics.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prptl {

struct transition {
  std::size_t target;
  rational probability;
  friend bool operator==(const transition&, const transition&) = default;
};

/// Finite labelled discrete-time Markov chain with exact probabilities.
///
/// Rows and the initial distribution sum to exactly one; zero entries are not
/// stored.
class dtmc {
public:
  struct entry {
    std::size_t source;
    std::size_t target;
    rational probability;
  };

  /// Validates and builds a chain. Throws invalid_argument naming the first
  /// violated invariant (bad index, duplicate entry, row or initial sum ≠ 1).
  dtmc(std::size_t state_count, const std::vector<std::pair<std::size_t, rational>>& initial,
       const std::vector<entry>& transitions, std::vector<state> labels);

  std::size_t state_count() const { return labels_.size(); }
  const std::vector<rational>& initial() const { return initial_; }
  /// Successors of `s` with positive probability, ordered by target.
  const std::vector<transition>& successors(std::size_t s) const { return rows_[s]; }
  const state& label(std::size_t s) const { return labels_[s]; }

  /// Atomic propositions used by any label.
  std::set<std::string> propositions() const;

  friend bool operator==(const dtmc&, const dtmc&) = default;

private:
  std::vector<rational> initial_;
  std::vector<std::vector<transition>> rows_;
  std::vector<state> labels_;
};

/// Parses the line-oriented model format:
///   states: <n>
///   init: <state> <prob>
///   label: <state> <atom> [<atom> ...]
///   trans: <src> <dst> <prob>
/// with `#` comments and probabilities as decimals or a/b fractions.
dtmc load_dtmc(std::string_view text);

/// Canonical text form; load_dtmc(save_dtmc(m)) == m.
std::string save_dtmc(const dtmc& m);

struct labeled_path {
  std::vector<std::size_t> states;
  interval labels;
};

/// Draws state sequences from a chain; cumulative rows are prepared once.
class path_sampler {
public:
  explicit path_sampler(const dtmc& m);

  /// horizon + 1 state indices.
  std::vector<std::size_t> states(std::size_t horizon, std::mt19937_64& rng) const;
  labeled_path path(std::size_t horizon, std::mt19937_64& rng) const;

private:
  using row = std::vector<std::pair<std::size_t, double>>;
  static std::size_t draw(const row& r, std::mt19937_64& rng);

  const dtmc& model_;
  row initial_;
  std::vector<row> rows_;
};

/// Path with horizon + 1 states drawn with a generator seeded by `seed`.
labeled_path sample_path(const dtmc& m, std::size_t horizon, std::uint64_t seed);

/// Same, drawing from a caller-owned generator.
labeled_path sample_path(const dtmc& m, std::size_t horizon, std::mt19937_64& rng);

} // namespace prptl
