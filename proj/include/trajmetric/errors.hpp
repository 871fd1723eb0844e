#pragma once

#include <stdexcept>
#include <string>

namespace trajmetric {

/// Input failed trajectory-set or parameter validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded; use a scalable solver instead.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal solver failure (iteration cap, unbounded pivot). Treated as a bug signal.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or serialization failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trajmetric
