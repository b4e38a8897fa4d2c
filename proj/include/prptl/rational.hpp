#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace prptl {

/// Exact rational arithmetic for probabilities.
using rational = mpq_class;

/// Parses "3/4", "0.25", "1" or "1.0" exactly. Throws syntax_error otherwise.
rational parse_rational(std::string_view text);

/// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const rational& r);

inline double to_double(const rational& r) { return r.get_d(); }

} // namespace prptl
