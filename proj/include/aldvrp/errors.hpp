#pragma once

#include <stdexcept>
#include <string>

namespace aldvrp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document: missing field, wrong JSON type.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input whose values break a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested distance cannot be covered before the instance horizon.
class HorizonExceeded : public Error {
 public:
  HorizonExceeded() : Error("horizon exceeded") {}
};

/// No feasible way to serve the requested customers (split, insertion).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace aldvrp
