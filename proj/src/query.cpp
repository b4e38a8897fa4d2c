#include <prptl/query.hpp>

namespace prptl {

std::string to_string(comparator c) {
  switch (c) {
  case comparator::less:
    return "<";
  case comparator::less_equal:
    return "<=";
  case comparator::greater_equal:
    return ">=";
  case comparator::greater:
    return ">";
  case comparator::equal:
    return "=";
  }
  return "?";
}

bool compare(comparator c, const rational& value, const rational& threshold) {
  switch (c) {
  case comparator::less:
    return value < threshold;
  case comparator::less_equal:
    return value <= threshold;
  case comparator::greater_equal:
    return value >= threshold;
  case comparator::greater:
    return value > threshold;
  case comparator::equal:
    return value == threshold;
  }
  return false;
}

} // namespace prptl
