#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace prptl {

/// A time value in N ∪ {ω}. ω is a distinct value, never a large integer.
class time_value {
public:
  constexpr time_value() = default;
  constexpr time_value(std::uint64_t n) : value_(n) {}

  static constexpr time_value omega() {
    time_value t;
    t.infinite_ = true;
    return t;
  }

  constexpr bool is_omega() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Only meaningful for finite values.
  constexpr std::uint64_t value() const { return value_; }

  /// ω − 1 = ω; 0 − 1 is not defined and yields nullopt.
  constexpr std::optional<time_value> predecessor() const {
    if (infinite_) return *this;
    if (value_ == 0) return std::nullopt;
    return time_value(value_ - 1);
  }

  friend constexpr bool operator==(time_value a, time_value b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(time_value a, time_value b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return infinite_ ? "w" : std::to_string(value_); }

private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// The window [lower, upper] annotating timed next and timed chop.
class time_bound {
public:
  /// Throws invalid_argument unless lower <= upper.
  time_bound(std::uint64_t lower, time_value upper);
  explicit time_bound(std::uint64_t exact) : lower_(exact), upper_(exact) {}

  static time_bound zero() { return time_bound(0); }
  static time_bound unit() { return time_bound(1); }

  std::uint64_t lower() const { return lower_; }
  time_value upper() const { return upper_; }

  bool is_zero() const { return lower_ == 0 && upper_ == time_value(0); }
  bool is_unit() const { return lower_ == 1 && upper_ == time_value(1); }
  bool is_bounded() const { return upper_.is_finite(); }

  /// [a−1, b−1]; requires lower ≥ 1.
  time_bound decremented() const;
  /// [max(a−1,0), b−1]; requires upper ≥ 1.
  time_bound shifted() const;

  friend bool operator==(const time_bound&, const time_bound&) = default;
  friend std::strong_ordering operator<=>(const time_bound& a, const time_bound& b) {
    if (auto c = a.lower_ <=> b.lower_; c != 0) return c;
    return a.upper_ <=> b.upper_;
  }

  /// "[a,b]" with ω printed as w.
  std::string to_string() const;

private:
  std::uint64_t lower_;
  time_value upper_;
};

} // namespace prptl
