#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellhelly {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed files, bad parameters, violated input invariants.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NotFiniteWithinCap : public Error {
 public:
  explicit NotFiniteWithinCap(std::size_t cap)
      : Error("not finite within cap=" + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class UnknownAtom : public Error {
 public:
  using Error::Error;
};

class NotSimple : public Error {
 public:
  using Error::Error;
};

class NotPairwiseIntersecting : public Error {
 public:
  using Error::Error;
};

// A complete subgraph whose Coxeter group is provably infinite.
class NotFC : public Error {
 public:
  using Error::Error;
};

// A complete subgraph whose Coxeter group did not fit in the cap but could
// not be shown infinite either.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class OracleUnsupported : public Error {
 public:
  using Error::Error;
};

class MarginTooSmall : public Error {
 public:
  using Error::Error;
};

// A construction needed vertices outside the enumerated ball.
class BoundaryReached : public Error {
 public:
  using Error::Error;
};

// A nonempty cell intersection whose vertex set is not an interval.
class IntervalViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cellhelly
