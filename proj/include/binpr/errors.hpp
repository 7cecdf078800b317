#pragma once

#include <stdexcept>
#include <string>

namespace binpr {

/// Mismatched or out-of-range vector lengths.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar parameter outside its admissible range.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Measurements tagged with a scheme the operation does not accept.
class SchemeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method produced non-finite values.
class DivergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search refused because the signal length exceeds the cap.
class CapExceededError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace binpr
