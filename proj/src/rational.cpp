#include <prptl/rational.hpp>

#include <prptl/error.hpp>

#include <cctype>

namespace prptl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw syntax_error("malformed fraction '" + std::string(text) + "'");
    mpz_class d{std::string(den), 10};
    if (d == 0) throw syntax_error("zero denominator in '" + std::string(text) + "'");
    out = rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw syntax_error("malformed decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    out = rational(digits, scale);
  } else {
    if (!all_digits(body)) throw syntax_error("malformed number '" + std::string(text) + "'");
    out = rational(mpz_class(std::string(body), 10));
  }
  out.canonicalize();
  return negative ? rational(-out) : out;
}

std::string to_string(const rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

} // namespace prptl
