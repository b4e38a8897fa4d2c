#include <prptl/time_bound.hpp>

#include <prptl/error.hpp>

namespace prptl {

time_bound::time_bound(std::uint64_t lower, time_value upper) : lower_(lower), upper_(upper) {
  if (time_value(lower) > upper)
    throw invalid_argument("time bound lower " + std::to_string(lower) + " exceeds upper " +
                           upper.to_string());
}

time_bound time_bound::decremented() const {
  if (lower_ == 0) throw invalid_argument("cannot decrement time bound " + to_string());
  return time_bound(lower_ - 1, *upper_.predecessor());
}

time_bound time_bound::shifted() const {
  auto up = upper_.predecessor();
  if (!up) throw invalid_argument("cannot shift time bound " + to_string());
  return time_bound(lower_ == 0 ? 0 : lower_ - 1, *up);
}

std::string time_bound::to_string() const {
  return "[" + std::to_string(lower_) + "," + upper_.to_string() + "]";
}

} // namespace prptl
