#pragma once

#include <stdexcept>
#include <string>

namespace ccopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid problem parameters (K, N, M out of range, empty instance, ...).
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

/// A weight vector that cannot be normalized into a pmf.
class InvalidPopularityError : public Error {
 public:
  using Error::Error;
};

/// Index outside its documented range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch between a parameter and its instance.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A brute-force or storage guard was exceeded; the message names the cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Integer quantization cannot represent the partition at the given F.
class QuantizationError : public Error {
 public:
  QuantizationError(const std::string& what, long min_viable_units)
      : Error(what), min_viable_units_(min_viable_units) {}
  long min_viable_units() const { return min_viable_units_; }

 private:
  long min_viable_units_;
};

/// An internal invariant failed; indicates a bug, not a user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccopt
