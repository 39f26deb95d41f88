#pragma once

#include <stdexcept>

namespace matmod {

// Base class for all matmod errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not match, or a required dimension is empty.
struct ShapeError : Error {
  using Error::Error;
};

// Invalid argument value: non-finite data, empty group, unknown name, ...
struct ArgumentError : Error {
  using Error::Error;
};

// A matrix that must be invertible (or well conditioned) is not.
struct SingularError : Error {
  using Error::Error;
};

// A matrix that must be symmetric positive (semi)definite is not.
struct DefinitenessError : Error {
  using Error::Error;
};

// Not enough degrees of freedom for the requested statistic.
struct DfError : Error {
  using Error::Error;
};

// Decomposition parts are not pairwise orthogonal or do not span the space.
struct DecompositionError : Error {
  using Error::Error;
};

// A solution exists but is not unique (rank-deficient coefficient recovery).
struct NonUniqueError : Error {
  using Error::Error;
};

// Numerical consistency violated beyond tolerated roundoff.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace matmod
