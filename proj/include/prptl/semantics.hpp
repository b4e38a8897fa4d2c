#pragma once

#include <prptl/formula.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace prptl {

/// Propositions true in a state; every other proposition is false.
using state = std::set<std::string>;

/// A non-empty finite sequence of states. Its length is states − 1.
class interval {
public:
  explicit interval(std::vector<state> states);

  std::size_t length() const { return states_.size() - 1; }
  const state& operator[](std::size_t k) const { return states_[k]; }
  const std::vector<state>& states() const { return states_; }

  friend bool operator==(const interval&, const interval&) = default;

private:
  std::vector<state> states_;
};

/// Reads the trace format: one line per state listing its true propositions,
/// a blank line being a state where nothing holds.
interval parse_trace(std::string_view text);

/// A formula compiled for repeated evaluation over finite intervals.
///
/// Each call keeps its own memo table keyed by (subformula, i, j), so the
/// cost is polynomial in the interval length and formula size.
class evaluator {
public:
  explicit evaluator(const formula& f);

  /// Truth of the formula on the subinterval (σ, i, j). Requires i ≤ j ≤ |σ|.
  bool operator()(const interval& sigma, std::size_t i, std::size_t j) const;

  /// Truth at (σ, i, |σ|) for every i, sharing one memo table.
  std::vector<bool> at_suffixes(const interval& sigma) const;

private:
  struct node {
    op kind;
    std::size_t atom = 0; // index into atom_names_
    std::uint64_t lower = 0;
    std::optional<std::uint64_t> upper; // nullopt = ω
    std::size_t a = 0, b = 0;
  };
  class session;

  std::size_t compile(const formula& f);

  std::vector<node> nodes_;
  std::vector<std::string> atom_names_;
  std::size_t root_ = 0;
};

/// One-off evaluation; throws invalid_argument if (i, j) is not a valid point.
bool evaluate(const interval& sigma, std::size_t i, std::size_t j, const formula& f);

/// Limits guarding the exhaustive equivalence check.
struct equivalence_scope {
  std::size_t max_atoms = 3;
  std::size_t max_length = 6;
};

struct equivalence_result {
  bool equivalent = true;
  /// First disagreement found: the interval and the start index i (j = |σ|).
  std::optional<interval> witness;
  std::size_t witness_start = 0;

  explicit operator bool() const { return equivalent; }
};

/// Compares `f` and `g` at every (σ, i, |σ|) over every interval on
/// `alphabet` with |σ| ≤ max_len. Throws budget_exceeded when the request is
/// outside `scope` and invalid_argument if an atom is missing from the alphabet.
equivalence_result equivalent_on(const formula& f, const formula& g,
                                 const std::set<std::string>& alphabet, std::size_t max_len,
                                 const equivalence_scope& scope = {});

/// Calls `visit` with every interval over `alphabet` of length ≤ max_len,
/// shortest first. Stops early when `visit` returns false.
template <class Visitor>
void for_each_interval(const std::vector<std::string>& alphabet, std::size_t max_len,
                       Visitor&& visit) {
  const std::size_t labels = std::size_t{1} << alphabet.size();
  auto label = [&](std::size_t bits) {
    state s;
    for (std::size_t a = 0; a < alphabet.size(); ++a)
      if (bits >> a & 1) s.insert(alphabet[a]);
    return s;
  };
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::size_t> digits(len + 1, 0);
    for (;;) {
      std::vector<state> states;
      states.reserve(len + 1);
      for (auto d : digits) states.push_back(label(d));
      if (!visit(interval(std::move(states)))) return;
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == labels) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  }
}

} // namespace prptl
