#pragma once

#include <stdexcept>
#include <string>

namespace prptl {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (formulas, queries, model and trace files).
class syntax_error : public error {
public:
  using error::error;
};

/// Arguments violating a documented precondition (bad arity, bad range, ...).
class invalid_argument : public error {
public:
  using error::error;
};

/// A configured size or effort budget was exhausted.
class budget_exceeded : public error {
public:
  using error::error;
};

/// The formula lies outside the fragment a checking method supports.
class unsupported_formula : public error {
public:
  using error::error;
};

/// Numerical procedure failed to reach its stopping criterion.
class convergence_error : public error {
public:
  using error::error;
};

} // namespace prptl
