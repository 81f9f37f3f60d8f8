#pragma once

#include <stdexcept>
#include <string>

namespace travelfunds {

/// Bad input: negative amounts, misaligned vectors, out-of-range indices,
/// unmet preconditions.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact identity that the caller promised does not hold.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// The requested budgeted amount can never be reached by any finite request.
class NoFiniteSolution : public std::domain_error {
 public:
  explicit NoFiniteSolution(const std::string& what) : std::domain_error(what) {}
};

/// Brute-force enumeration would exceed its configured bound.
class SizeError : public std::length_error {
 public:
  explicit SizeError(const std::string& what) : std::length_error(what) {}
};

}  // namespace travelfunds
