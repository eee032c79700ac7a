#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (non-prime p, zero divisor,
/// mismatched fields, out-of-range rank...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. The message names the offending token.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would visit more candidates than the configured bound.
class WorkBoundError : public Error {
 public:
  WorkBoundError(double estimated_log2, double bound_log2)
      : Error("work bound exceeded: estimated 2^" + format(estimated_log2) +
              " candidate tuples, bound is 2^" + format(bound_log2)),
        estimated_log2_(estimated_log2),
        bound_log2_(bound_log2) {}

  double estimated_log2() const noexcept { return estimated_log2_; }
  double bound_log2() const noexcept { return bound_log2_; }

 private:
  static std::string format(double v) {
    std::string s = std::to_string(v);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  double estimated_log2_;
  double bound_log2_;
};

}  // namespace drinfeld
