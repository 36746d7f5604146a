#pragma once

#include <stdexcept>
#include <string>

namespace loopkit {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-contract input: bad JSON fields, indices out of range,
// zero denominators, unsupported sizes, misuse of an operation's domain.
class InputError : public Error {
public:
  using Error::Error;
};

// Evaluation of a rational function at a root of its denominator. Carries the
// offending point as a canonical rational string.
class PoleError : public Error {
public:
  PoleError(const std::string& what, std::string at)
      : Error(what), at_(std::move(at)) {}
  const std::string& at() const { return at_; }

private:
  std::string at_;
};

// A polynomial operation produced (or was handed) a degree above the cap.
class DegreeCapError : public Error {
public:
  using Error::Error;
};

// Loop network with 1 - P = 0: every closed-loop formula divides by 1 - P,
// so such instances are rejected at construction.
class DegenerateNetworkError : public Error {
public:
  using Error::Error;
};

// The excitation/measurement pattern fails the identifiability conditions.
class NotIdentifiableError : public Error {
public:
  using Error::Error;
};

// The instance sits on the exceptional zero-measure set (a vanishing path
// product, a loop product equal to one, ...). Results would be garbage, so
// the operation aborts instead.
class NonGenericError : public Error {
public:
  using Error::Error;
};

}  // namespace loopkit
