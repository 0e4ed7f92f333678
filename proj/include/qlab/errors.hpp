#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vertex label that does not belong to the ambient vertex set.
class UnknownVertex : public Error {
 public:
  explicit UnknownVertex(std::string label)
      : Error("unknown vertex '" + label + "'"), label_(std::move(label)) {}

  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

/// Malformed external input (JSON documents, path literals).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Division in the Laurent ring left a non-zero remainder.
class InexactDivision : public Error {
 public:
  explicit InexactDivision(std::string remainder)
      : Error("inexact division, remainder " + remainder),
        remainder_(std::move(remainder)) {}

  const std::string& remainder() const noexcept { return remainder_; }

 private:
  std::string remainder_;
};

/// A polynomial whose terms do not share a common degree.
class Inhomogeneous : public Error {
 public:
  Inhomogeneous(std::string first, std::string second)
      : Error("inhomogeneous polynomial: terms " + first + " and " + second +
              " have different degrees"),
        first_(std::move(first)),
        second_(std::move(second)) {}

  const std::string& first_term() const noexcept { return first_; }
  const std::string& second_term() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

/// Internal state that contradicts a proven invariant (e.g. a
/// sign-incoherent C-matrix column).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_mul(a, -1); }

}  // namespace detail
}  // namespace qlab
