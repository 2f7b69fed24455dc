#pragma once

#include <stdexcept>
#include <string>

namespace fgap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inadmissible input data (bad class, bad divisor, bad request).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidRequest : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class EvaluationAtPole : public Error {
 public:
  using Error::Error;
};

class UnboundedAtInfinity : public Error {
 public:
  using Error::Error;
};

class PoleOrderExceeded : public Error {
 public:
  using Error::Error;
};

/// The gluing system is too ill-conditioned at this position: the divisor is
/// not generic there.
class NonGenericDivisor : public Error {
 public:
  NonGenericDivisor(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Two constructed points coincide within the coincidence tolerance.
class DegenerateConfig : public Error {
 public:
  using Error::Error;
};

/// A residual sample lies too close to a pole, a marked point or a support.
class SampleTooClose : public Error {
 public:
  using Error::Error;
};

/// The one-dimensional gluing equation is singular at this x.
class DegeneratePosition : public Error {
 public:
  using Error::Error;
};

}  // namespace fgap
