#pragma once

#include <prptl/formula.hpp>

#include <cstdint>
#include <string_view>
#include <vector>

namespace prptl {

// Definitional expansions of the derived operators into core syntax. The
// expansions are purely syntactic; nothing is simplified.

formula implies(formula a, formula b);       // ¬a ∨ b
formula iff(formula a, formula b);           // (a ∧ b) ∨ (¬a ∧ ¬b)
formula diamond(formula p);                  // true ; p
formula box(formula p);                      // ¬◇¬p
formula until(formula p, formula q);         // p ;[1,1] q
formula empty();                             // ¬X[1,1] true
formula more();                              // X[1,1] true
formula skip();                              // X[1,1] empty
formula len(std::uint64_t n);                // X[1,1]^n empty
formula keep(formula p);                     // □(¬empty → p)
formula halt(formula p);                     // □(empty ↔ p)
formula fin(formula p);                      // □(empty → p)
formula diamond_within(time_bound b, formula p); // X[b] p
formula box_within(time_bound b, formula p);     // ¬X[b]¬p
/// q ∨ (□[0,t−1] p ;[1,1] q); for t = 0 this is q.
formula until_within(std::uint64_t t, formula p, formula q);

/// True iff `f` is literally the expansion of empty, ¬X[1,1] true.
bool is_empty_formula(const formula& f);

/// Tag-based constructor used by generic front ends. Recognised tags:
/// diamond, box, until, until_leq, empty, more, skip, len, keep, halt, fin,
/// diamond_within, box_within. Naturals supply len's n, until_leq's t and the
/// [t1,t2] of the windowed forms. Throws invalid_argument on an unknown tag,
/// an arity mismatch or a negative natural.
formula mk_derived(std::string_view tag, const std::vector<formula>& operands,
                   const std::vector<std::int64_t>& naturals = {});

/// Every tag accepted by mk_derived.
const std::vector<std::string_view>& derived_tags();

} // namespace prptl
