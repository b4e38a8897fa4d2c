#pragma once

#include <prptl/formula.hpp>

namespace prptl {

/// Rewrites `f` into its canonical representative.
///
/// Double negations vanish; ∧/∨ chains are flattened, sorted under the formula
/// order, deduplicated and folded left; true/false units and complementary
/// pairs collapse; next and chop over false become false. Time bounds are left
/// as they are. The result is equivalent to `f` and canonicalize is idempotent.
formula canonicalize(const formula& f);

} // namespace prptl
