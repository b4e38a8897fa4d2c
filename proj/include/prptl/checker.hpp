#pragma once

#include <prptl/dtmc.hpp>
#include <prptl/formula.hpp>
#include <prptl/query.hpp>
#include <prptl/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prptl {

/// Longest finite interval on which `f` can hold, or nullopt if unbounded.
std::optional<std::uint64_t> max_satisfying_length(const formula& f);

/// Number of steps after which the truth of `f` on an infinite path is fixed,
/// or nullopt when no such bound is derivable (ω bounds, or a chop whose left
/// operand can span unboundedly many steps).
std::optional<std::uint64_t> horizon(const formula& f);

/// How unbounded operators that act on the infinite path are used.
enum class fragment {
  bounded,    ///< none; truth is fixed after horizon(f) steps
  co_safety,  ///< all under an even number of negations
  safety,     ///< all under an odd number of negations
  mixed       ///< both polarities; unsupported
};

struct fragment_info {
  fragment kind;
  /// For `mixed`, a subformula whose polarity conflicts with an earlier one.
  std::optional<formula> offending;
};

fragment_info classify(const formula& f);

enum class check_method { enumeration, bounded_dp, fixpoint, monte_carlo };

std::string to_string(check_method m);

struct check_result {
  check_method method = check_method::enumeration;
  /// Set for exact methods.
  std::optional<rational> exact;
  double probability = 0;
  /// |true value − probability| ≤ error_bound (0 for exact methods; for Monte
  /// Carlo the half-width of the confidence interval).
  double error_bound = 0;
  std::size_t iterations = 0;
  std::size_t samples = 0;
  /// Residual (state, continuation) variables of the equation system.
  std::size_t variables = 0;
  /// 95% Wilson interval for Monte Carlo.
  std::optional<std::pair<double, double>> confidence;
  /// Monte Carlo only: false when the sampled prefix may not decide the formula.
  bool prefix_exact = true;
  /// Lower-bound value after each sweep, when requested.
  std::vector<double> trace;
};

struct checker_options {
  double tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
  std::uint64_t max_horizon = 256;
  std::size_t max_residuals = 1'000'000;
  std::size_t max_paths = 10'000'000;
  bool record_trace = false;
};

/// Exact measure of the paths of length `horizon` whose finite interval
/// satisfies `f`, by explicit enumeration of positive-probability paths.
rational enumerate_exact(const dtmc& m, const formula& f, std::size_t horizon,
                         const checker_options& options = {});

/// Exact probability for bounded formulas by dynamic programming over
/// (state, residual) pairs. Throws unsupported_formula when horizon(f) is
/// undefined and budget_exceeded when it is above the cap.
check_result check_bounded(const dtmc& m, const formula& f, const checker_options& options = {});

/// Probability for co-safety or safety formulas by interval iteration on the
/// residual equation system (safety via the complement).
check_result check_unbounded(const dtmc& m, const formula& f, const checker_options& options = {});

/// Picks check_bounded when it applies and check_unbounded otherwise.
check_result check(const dtmc& m, const formula& f, const checker_options& options = {});

enum class verdict { holds, fails, inconclusive };

std::string to_string(verdict v);

struct query_result {
  verdict outcome;
  check_result detail;
};

/// Decides [body]_{⊴ p}. Approximate results within their error bound of
/// the threshold, and `=` on approximate results, are inconclusive.
query_result check_query(const dtmc& m, const prob_query& q, const checker_options& options = {});

/// Monte Carlo mean of the formula over sampled prefixes with a 95% Wilson
/// interval. Deterministic for a given seed.
check_result estimate(const dtmc& m, const formula& f, std::size_t samples, std::size_t horizon,
                      std::uint64_t seed);

} // namespace prptl
