#pragma once

#include <prptl/error.hpp>
#include <prptl/formula.hpp>
#include <prptl/query.hpp>

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

namespace prptl {

/// Byte range [start, end) in the parsed text.
struct source_span {
  std::size_t start = 0;
  std::size_t end = 0;
};

class parse_error : public syntax_error {
public:
  parse_error(const std::string& what, source_span span, std::set<std::string> expected = {})
      : syntax_error(what), span_(span), expected_(std::move(expected)) {}

  const source_span& span() const { return span_; }
  /// Token kinds that would have been accepted at the error position.
  const std::set<std::string>& expected() const { return expected_; }

private:
  source_span span_;
  std::set<std::string> expected_;
};

/// Parses the concrete formula syntax (see docs/grammar.md). Derived
/// operators are expanded while parsing.
formula parse_formula(std::string_view text);

/// Parses `Pr<cmp><threshold> [ <formula> ]`.
prob_query parse_query(std::string_view text);

/// Prints `f` so that parse_formula(render(f)) == f structurally.
std::string render(const formula& f);

} // namespace prptl
