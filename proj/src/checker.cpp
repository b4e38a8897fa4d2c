#include <prptl/checker.hpp>

#include <prptl/canonical.hpp>
#include <prptl/error.hpp>
#include <prptl/normal_form.hpp>
#include <prptl/parser.hpp>
#include <prptl/semantics.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

namespace prptl {

// ---------------------------------------------------------------- static analysis

namespace {

using length = std::optional<std::uint64_t>;

length add(length a, length b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

length upper_of(const time_bound& b) {
  if (b.upper().is_omega()) return std::nullopt;
  return b.upper().value();
}

} // namespace

std::optional<std::uint64_t> max_satisfying_length(const formula& f) {
  switch (f.kind()) {
  case op::top:
  case op::atom:
    return std::nullopt;
  case op::neg: {
    // ¬X[a,b] true holds exactly on intervals shorter than a.
    formula s = f.sub();
    if (s.is(op::next) && s.sub().is_top()) return s.bound().lower() == 0 ? 0 : s.bound().lower() - 1;
    return std::nullopt;
  }
  case op::conj: {
    auto a = max_satisfying_length(f.left()), b = max_satisfying_length(f.right());
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }
  case op::disj: {
    auto a = max_satisfying_length(f.left()), b = max_satisfying_length(f.right());
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
  }
  case op::next:
    return add(upper_of(f.bound()), max_satisfying_length(f.sub()));
  case op::chop:
    return add(add(max_satisfying_length(f.left()), upper_of(f.bound())), max_satisfying_length(f.right()));
  }
  return std::nullopt;
}

std::optional<std::uint64_t> horizon(const formula& f) {
  switch (f.kind()) {
  case op::top:
  case op::atom:
    return 0;
  case op::neg:
    return horizon(f.sub());
  case op::conj:
  case op::disj: {
    auto a = horizon(f.left()), b = horizon(f.right());
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
  }
  case op::next:
    return add(upper_of(f.bound()), horizon(f.sub()));
  case op::chop:
    // The left operand only ever sees a finite prefix, so it matters only
    // through how far it can push the seam.
    return add(add(max_satisfying_length(f.left()), upper_of(f.bound())), horizon(f.right()));
  }
  return std::nullopt;
}

namespace {

class polarity_scan {
public:
  fragment_info run(const formula& f) {
    visit(f, true);
    if (conflict_) return {fragment::mixed, conflict_};
    if (!polarity_) return {fragment::bounded, std::nullopt};
    return {*polarity_ ? fragment::co_safety : fragment::safety, std::nullopt};
  }

private:
  void record(const formula& g, bool positive) {
    if (!polarity_)
      polarity_ = positive;
    else if (*polarity_ != positive && !conflict_)
      conflict_ = g;
  }

  void visit(const formula& g, bool positive) {
    switch (g.kind()) {
    case op::top:
    case op::atom:
      return;
    case op::neg:
      return visit(g.sub(), !positive);
    case op::conj:
    case op::disj:
      visit(g.left(), positive);
      return visit(g.right(), positive);
    case op::next:
      if (g.bound().upper().is_omega()) record(g, positive);
      return visit(g.sub(), positive);
    case op::chop:
      if (g.bound().upper().is_omega() || !max_satisfying_length(g.left())) record(g, positive);
      return visit(g.right(), positive);
    }
  }

  std::optional<bool> polarity_;
  std::optional<formula> conflict_;
};

} // namespace

fragment_info classify(const formula& f) { return polarity_scan{}.run(f); }

std::string to_string(check_method m) {
  switch (m) {
  case check_method::enumeration:
    return "enumeration";
  case check_method::bounded_dp:
    return "bounded-dp";
  case check_method::fixpoint:
    return "fixpoint";
  case check_method::monte_carlo:
    return "monte-carlo";
  }
  return "?";
}

std::string to_string(verdict v) {
  switch (v) {
  case verdict::holds:
    return "holds";
  case verdict::fails:
    return "fails";
  case verdict::inconclusive:
    return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------- residual system

namespace {

/// Variables x(s, C): probability that the path from state s satisfies C.
/// After reading the label of s, C residuates to the unique unit-step CTNF
/// continuation C' whose guard the label satisfies, and
///   x(s, C) = Σ T(s, s') · x(s', C'),  with x = 1 for C' = true, 0 for false.
/// Empty disjuncts are dropped: they never hold on an infinite path.
class residual_system {
public:
  struct variable {
    std::size_t state;
    formula continuation;
    int constant = -1; // 0 or 1 when the residual is false or true
    std::vector<std::pair<std::size_t, rational>> successors;
  };

  residual_system(const dtmc& m, const formula& f, std::size_t max_variables)
      : model_(m), limit_(max_variables) {
    formula root = canonicalize(f);
    for (std::size_t s = 0; s < m.state_count(); ++s)
      if (m.initial()[s] != 0) initial_.emplace_back(intern(s, root), m.initial()[s]);
    while (!work_.empty()) {
      std::size_t v = work_.front();
      work_.pop_front();
      expand(v);
    }
  }

  const std::vector<variable>& variables() const { return vars_; }
  const std::vector<std::pair<std::size_t, rational>>& initial() const { return initial_; }

private:
  struct key_hash {
    std::size_t operator()(const std::pair<std::size_t, formula>& k) const {
      return k.second.hash() * 31 + k.first;
    }
  };

  std::size_t intern(std::size_t s, const formula& c) {
    auto key = std::make_pair(s, c);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    if (vars_.size() >= limit_)
      throw budget_exceeded("residual system exceeded " + std::to_string(limit_) +
                            " variables at continuation " + render(c));
    std::size_t id = vars_.size();
    vars_.push_back({s, c, -1, {}});
    index_.emplace(std::move(key), id);
    work_.push_back(id);
    return id;
  }

  formula residual(const formula& c, const state& label) {
    const time_normal_form& n = engine_.unit_ctnf(c);
    for (const auto& d : n.future)
      if (d.condition.satisfied_by(label)) return d.next;
    return formula::bottom(); // unreachable for a complete normal form
  }

  void expand(std::size_t v) {
    const std::size_t s = vars_[v].state;
    const formula c = vars_[v].continuation;
    if (c.is_top() || c.is_bottom()) {
      vars_[v].constant = c.is_top() ? 1 : 0;
      return;
    }
    formula next = residual(c, model_.label(s));
    if (next.is_top() || next.is_bottom()) {
      vars_[v].constant = next.is_top() ? 1 : 0;
      return;
    }
    std::vector<std::pair<std::size_t, rational>> succ;
    for (const auto& t : model_.successors(s)) succ.emplace_back(intern(t.target, next), t.probability);
    vars_[v].successors = std::move(succ);
  }

  const dtmc& model_;
  std::size_t limit_;
  normal_form_engine engine_;
  std::vector<variable> vars_;
  std::unordered_map<std::pair<std::size_t, formula>, std::size_t, key_hash> index_;
  std::deque<std::size_t> work_;
  std::vector<std::pair<std::size_t, rational>> initial_;
};

check_result least_fixpoint(const dtmc& m, const formula& f, const checker_options& options) {
  residual_system sys(m, f, options.max_residuals);
  const auto& vars = sys.variables();
  const std::size_t n = vars.size();

  // Variables that cannot reach a true residual have probability 0; fixing
  // them makes the remaining system contracting, so iterating from 1 gives a
  // sound upper bound.
  std::vector<std::vector<std::size_t>> predecessors(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [w, p] : vars[v].successors) predecessors[w].push_back(v);
  std::vector<char> reaches(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v)
    if (vars[v].constant == 1) reaches[v] = 1, stack.push_back(v);
  while (!stack.empty()) {
    std::size_t w = stack.back();
    stack.pop_back();
    for (auto v : predecessors[w])
      if (!reaches[v] && vars[v].constant < 0) reaches[v] = 1, stack.push_back(v);
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [w, p] : vars[v].successors) rows[v].emplace_back(w, to_double(p));
  std::vector<std::pair<std::size_t, double>> init;
  for (const auto& [v, p] : sys.initial()) init.emplace_back(v, to_double(p));

  std::vector<double> lower(n, 0.0), upper(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (vars[v].constant == 1) lower[v] = upper[v] = 1.0;
    else if (vars[v].constant < 0 && reaches[v]) upper[v] = 1.0;
  }
  auto weighted = [&](const std::vector<double>& x) {
    double acc = 0;
    for (const auto& [v, p] : init) acc += p * x[v];
    return acc;
  };

  check_result result;
  result.method = check_method::fixpoint;
  result.variables = n;
  std::vector<double> next_lower(n), next_upper(n);
  for (;;) {
    double gap = 0;
    for (std::size_t v = 0; v < n; ++v) gap = std::max(gap, upper[v] - lower[v]);
    if (gap < options.tolerance) break;
    if (result.iterations >= options.max_iterations)
      throw convergence_error("value iteration did not converge within " +
                              std::to_string(options.max_iterations) + " sweeps (gap " +
                              std::to_string(gap) + ")");
    for (std::size_t v = 0; v < n; ++v) {
      if (vars[v].constant >= 0 || !reaches[v]) {
        next_lower[v] = lower[v];
        next_upper[v] = upper[v];
        continue;
      }
      double lo = 0, hi = 0;
      for (const auto& [w, p] : rows[v]) {
        lo += p * lower[w];
        hi += p * upper[w];
      }
      next_lower[v] = std::max(lo, lower[v]);
      next_upper[v] = std::min(hi, upper[v]);
    }
    lower.swap(next_lower);
    upper.swap(next_upper);
    ++result.iterations;
    if (options.record_trace) result.trace.push_back(weighted(lower));
  }
  double lo = weighted(lower), hi = weighted(upper);
  result.probability = std::clamp((lo + hi) / 2, 0.0, 1.0);
  // Half the bracket plus slack for floating-point summation.
  result.error_bound = (hi - lo) / 2 + 64 * std::numeric_limits<double>::epsilon();
  return result;
}

} // namespace

// ---------------------------------------------------------------- public operations

rational enumerate_exact(const dtmc& m, const formula& f, std::size_t horizon,
                         const checker_options& options) {
  evaluator ev(f);
  rational total = 0;
  std::size_t paths = 0;
  std::vector<std::size_t> path;
  std::vector<rational> weight; // probability of each prefix

  // Iterative DFS over positive-probability paths of exactly horizon + 1 states.
  struct frame {
    std::size_t state;
    rational probability;
  };
  std::vector<std::vector<frame>> choices;
  std::vector<frame> roots;
  for (std::size_t s = 0; s < m.state_count(); ++s)
    if (m.initial()[s] != 0) roots.push_back({s, m.initial()[s]});
  choices.push_back(std::move(roots));

  while (!choices.empty()) {
    if (choices.back().empty()) {
      choices.pop_back();
      if (!path.empty()) {
        path.pop_back();
        weight.pop_back();
      }
      continue;
    }
    frame fr = std::move(choices.back().back());
    choices.back().pop_back();
    rational w = weight.empty() ? fr.probability : rational(weight.back() * fr.probability);
    path.push_back(fr.state);
    weight.push_back(w);
    if (path.size() == horizon + 1) {
      if (++paths > options.max_paths)
        throw budget_exceeded("enumeration exceeded " + std::to_string(options.max_paths) + " paths");
      std::vector<state> labels;
      labels.reserve(path.size());
      for (auto s : path) labels.push_back(m.label(s));
      if (ev(interval(std::move(labels)), 0, horizon)) total += w;
      path.pop_back();
      weight.pop_back();
      continue;
    }
    std::vector<frame> next;
    for (const auto& t : m.successors(fr.state)) next.push_back({t.target, t.probability});
    std::reverse(next.begin(), next.end());
    choices.push_back(std::move(next));
  }
  return total;
}

check_result check_bounded(const dtmc& m, const formula& f, const checker_options& options) {
  auto h = horizon(f);
  if (!h)
    throw unsupported_formula("formula has no finite horizon (unbounded operator present); use "
                              "check_unbounded: " + render(f));
  if (*h > options.max_horizon)
    throw budget_exceeded("horizon " + std::to_string(*h) + " exceeds the cap of " +
                          std::to_string(options.max_horizon));

  residual_system sys(m, f, options.max_residuals);
  const auto& vars = sys.variables();
  const std::size_t n = vars.size();

  // Reverse topological evaluation; a cycle means the residuals did not shrink.
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> predecessors(n);
  for (std::size_t v = 0; v < n; ++v) {
    pending[v] = vars[v].successors.size();
    for (const auto& [w, p] : vars[v].successors) predecessors[w].push_back(v);
  }
  std::vector<rational> value(n);
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (pending[v] == 0) ready.push_back(v);
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++done;
    if (vars[v].constant >= 0) {
      value[v] = vars[v].constant;
    } else {
      rational acc = 0;
      for (const auto& [w, p] : vars[v].successors) acc += p * value[w];
      value[v] = acc;
    }
    for (auto u : predecessors[v])
      if (--pending[u] == 0) ready.push_back(u);
  }
  if (done != n)
    throw unsupported_formula("residual system of a bounded formula contains a cycle: " + render(f));

  rational total = 0;
  for (const auto& [v, p] : sys.initial()) total += p * value[v];
  check_result result;
  result.method = check_method::bounded_dp;
  result.exact = total;
  result.probability = to_double(total);
  result.variables = n;
  return result;
}

check_result check_unbounded(const dtmc& m, const formula& f, const checker_options& options) {
  fragment_info info = classify(f);
  switch (info.kind) {
  case fragment::mixed:
    throw unsupported_formula("unbounded operators occur with both polarities; offending subformula: " +
                              render(*info.offending));
  case fragment::bounded:
  case fragment::co_safety:
    return least_fixpoint(m, f, options);
  case fragment::safety: {
    check_result r = least_fixpoint(m, canonicalize(formula::neg(f)), options);
    r.probability = std::clamp(1.0 - r.probability, 0.0, 1.0);
    for (auto& t : r.trace) t = 1.0 - t;
    return r;
  }
  }
  throw unsupported_formula("unclassified formula");
}

check_result check(const dtmc& m, const formula& f, const checker_options& options) {
  auto h = horizon(f);
  if (h && *h <= options.max_horizon) return check_bounded(m, f, options);
  return check_unbounded(m, f, options);
}

query_result check_query(const dtmc& m, const prob_query& q, const checker_options& options) {
  check_result r = check(m, q.body, options);
  if (r.exact) return {compare(q.cmp, *r.exact, q.threshold) ? verdict::holds : verdict::fails, r};
  const double threshold = to_double(q.threshold);
  if (q.cmp == comparator::equal || std::abs(r.probability - threshold) <= r.error_bound)
    return {verdict::inconclusive, r};
  bool holds = false;
  switch (q.cmp) {
  case comparator::less:
  case comparator::less_equal:
    holds = r.probability < threshold;
    break;
  case comparator::greater:
  case comparator::greater_equal:
    holds = r.probability > threshold;
    break;
  case comparator::equal:
    break;
  }
  return {holds ? verdict::holds : verdict::fails, r};
}

check_result estimate(const dtmc& m, const formula& f, std::size_t samples, std::size_t horizon_steps,
                      std::uint64_t seed) {
  if (samples == 0) throw invalid_argument("estimate needs at least one sample");
  std::mt19937_64 rng(seed);
  path_sampler sampler(m);
  evaluator ev(f);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    auto states = sampler.states(horizon_steps, rng);
    std::vector<state> labels;
    labels.reserve(states.size());
    for (auto s : states) labels.push_back(m.label(s));
    if (ev(interval(std::move(labels)), 0, horizon_steps)) ++hits;
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  const double z = 1.959963984540054;
  const double denom = 1 + z * z / n;
  const double center = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;

  check_result r;
  r.method = check_method::monte_carlo;
  r.probability = p;
  r.samples = samples;
  r.confidence = std::make_pair(std::max(0.0, center - half), std::min(1.0, center + half));
  r.error_bound = std::max(r.confidence->second - p, p - r.confidence->first);
  auto h = horizon(f);
  r.prefix_exact = h && *h <= horizon_steps;
  return r;
}

} // namespace prptl
