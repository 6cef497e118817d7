#pragma once

#include <stdexcept>
#include <string>

namespace relkit {

/// Base class for all numerical failures raised by this library.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested point is in (or numerically indistinguishable from) the
/// spectrum of the relation/operator being resolved.
class SpectrumError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A rank decision could not be made at the working tolerance.
class RankAmbiguityError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Evaluation requested on the branch cut [0, +inf) of the square root.
class BranchCutError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Adaptive quadrature failed to converge within the subdivision budget.
class QuadratureError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace relkit
