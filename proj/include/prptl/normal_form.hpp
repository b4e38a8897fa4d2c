#pragma once

#include <prptl/formula.hpp>
#include <prptl/semantics.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace prptl {

/// Conjunction of literals; the empty conjunction is true.
class guard {
public:
  guard() = default;
  static guard literal(const std::string& atom, bool positive);

  /// nullopt when the conjunction is contradictory.
  static std::optional<guard> conj(const guard& a, const guard& b);

  bool is_true() const { return literals_.empty(); }
  bool satisfied_by(const state& s) const;
  /// True iff every assignment satisfying `*this` satisfies `other`.
  bool implies(const guard& other) const;
  std::set<std::string> atoms() const;
  const std::map<std::string, bool>& literals() const { return literals_; }

  formula to_formula() const;
  std::string to_string() const;

  friend bool operator==(const guard&, const guard&) = default;
  friend auto operator<=>(const guard&, const guard&) = default;

private:
  std::map<std::string, bool> literals_;
};

/// All 2^n complete assignments over `atoms`, positive literals first.
std::vector<guard> minterms(const std::set<std::string>& atoms);

/// guard ∧ X[bound] next
struct future_disjunct {
  guard condition;
  time_bound bound;
  formula next;

  friend bool operator==(const future_disjunct&, const future_disjunct&) = default;
};

/// (⋁ e ∧ empty) ∨ (⋁ g ∧ X[t1,t2] next) with t1 ≥ 1 and canonical continuations.
struct time_normal_form {
  std::vector<guard> empty;
  std::vector<future_disjunct> future;

  formula to_formula() const;
  /// Guard atoms across all disjuncts.
  std::set<std::string> guard_atoms() const;
  /// True iff every future bound is [1,1].
  bool unit_step() const;
  /// Future guards form a complete and exclusive family (truth-table check).
  bool complete_and_exclusive() const;

  friend bool operator==(const time_normal_form&, const time_normal_form&) = default;
};

/// "(g & empty) | (g & X[a,b] next) | ..."
std::string render(const time_normal_form& n);

struct normal_form_options {
  /// When set, every atom of the input must belong to it.
  std::optional<std::set<std::string>> alphabet;
  /// Cap on distinct continuation formulas created by one engine.
  std::size_t max_continuations = 10000;
};

/// Stateful rewriting context: caches normal forms of formulas it has seen,
/// which keeps repeated expansion of continuation closures cheap. Not
/// thread-safe; use one engine per thread.
class normal_form_engine {
public:
  explicit normal_form_engine(normal_form_options options = {});

  /// Time normal form; k + h ≥ 1 always holds on the result.
  time_normal_form tnf(const formula& f);

  /// Rewrites every future bound to [1,1] via X[a,b] C ≡ X[1,1] X[a−1,b−1] C.
  time_normal_form unit_step(const time_normal_form& n);

  /// Complete time normal form over the guard atoms of `n`: all guards become
  /// minterms, each minterm has exactly one future disjunct (false when
  /// uncovered), and minterms with differing bounds are unit-stepped first.
  time_normal_form ctnf(const time_normal_form& n);

  /// TNF of ¬n for a unit-step CTNF `n`.
  time_normal_form negate_ctnf(const time_normal_form& n);

  /// ctnf(unit_step(tnf(f))), cached.
  const time_normal_form& unit_ctnf(const formula& f);

  std::size_t continuation_count() const { return continuations_.size(); }

private:
  time_normal_form expand(const formula& f);
  void add_empty(time_normal_form& n, const guard& g);
  void add_future(time_normal_form& n, const guard& g, const time_bound& b, const formula& next);
  formula remember(formula f);
  time_normal_form conjoin(const time_normal_form& a, const time_normal_form& b);
  time_normal_form restrict(const time_normal_form& n, const guard& g);

  normal_form_options options_;
  std::unordered_map<formula, time_normal_form> tnf_cache_;
  std::unordered_map<formula, time_normal_form> unit_cache_;
  std::unordered_map<formula, char> continuations_;
};

time_normal_form tnf(const formula& f, const normal_form_options& options = {});

/// `alphabet` must contain every guard atom of `n`.
time_normal_form ctnf(const time_normal_form& n, const std::set<std::string>& alphabet);

/// Throws invalid_argument unless `n` is a unit-step CTNF.
time_normal_form negate_ctnf(const time_normal_form& n);

/// One bottom-up pass of the rewrite laws
///   X[1,1]P ;[b] Q     → X[1,1](P ;[b] Q)
///   empty ;[b] P       → X[b] P
///   (w ∧ P) ;[b] Q     → w ∧ (P ;[b] Q)          (w a state formula)
///   X[b]P ∧ (Q ∨ R)    → (X[b]P ∧ Q) ∨ (X[b]P ∧ R)
///   P ;[b] (Q ∨ R)     → (P ;[b] Q) ∨ (P ;[b] R)
formula apply_laws(const formula& f);

} // namespace prptl
