#pragma once

#include <stdexcept>
#include <string>

namespace gl2lab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

// Denominator vanishes at a numeric evaluation point.
struct PoleError : Error {
  using Error::Error;
};

// Input outside the domain an operation is defined on.
struct DomainError : Error {
  using Error::Error;
};

// Request beyond the configured table depths.
struct Unsupported : Error {
  using Error::Error;
};

}  // namespace gl2lab
