#pragma once

#include <prptl/formula.hpp>
#include <prptl/rational.hpp>

#include <string>

namespace prptl {

enum class comparator { less, less_equal, greater_equal, greater, equal };

std::string to_string(comparator c);

/// Exact comparison `value ⊴ threshold`.
bool compare(comparator c, const rational& value, const rational& threshold);

/// The probability-bound query [body]_{⊴ threshold}.
struct prob_query {
  comparator cmp;
  rational threshold; ///< always within [0,1]
  formula body;
};

} // namespace prptl
