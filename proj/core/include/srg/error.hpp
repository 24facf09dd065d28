#pragma once

#include <stdexcept>
#include <string>

namespace srg {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad amplitude, bad grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two signals do not live on the same grid (omega0 or sample count differ).
class IncompatibleSignals : public Error {
 public:
  using Error::Error;
};

/// Angle requested between a signal and the zero signal.
class DegenerateAngle : public Error {
 public:
  using Error::Error;
};

/// Transfer function has a pole on the imaginary axis at a requested frequency.
class PoleOnAxis : public Error {
 public:
  explicit PoleOnAxis(double omega);
  double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

/// The pair u1 = u2 has no SRG point.
class ExcludedPair : public Error {
 public:
  using Error::Error;
};

/// Beltrami-Klein preimage of w = 1 is the point at infinity.
class InfinityPreimage : public Error {
 public:
  using Error::Error;
};

/// Region algebra was asked to sum a region that contains the point at infinity.
class InfinityOperand : public Error {
 public:
  using Error::Error;
};

/// Region operation has no representation for this combination of operands.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace srg
