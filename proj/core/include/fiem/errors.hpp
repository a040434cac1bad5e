#pragma once

#include <stdexcept>

namespace fiem {

/// Failures of the numerics (as opposed to invalid input).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Galerkin matrix is numerically singular.
class SingularMatrix : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace fiem
