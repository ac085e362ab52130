#pragma once

#include <stdexcept>
#include <string>

namespace bmtk {

/// Bad arguments, violated index constraints or mismatched grids.
/// The command line maps these to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input file is not a valid BMGF grid file.
class FormatError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// A numerical procedure could not produce a trustworthy answer.
/// The command line maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Poisson right-hand side has a mean that is not negligible.
class MeanNotZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fixed-point iteration did not contract to tolerance.
class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Least-squares normal equations are rank deficient on too many nodes.
class DegenerateGradient : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bmtk
