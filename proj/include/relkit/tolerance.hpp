#pragma once

#include <stdexcept>

namespace relkit {

/// Numerical policy shared by all subspace and relation computations.
///
/// rank_rel  relative singular-value cutoff for rank decisions
/// ortho     admissible orthonormality residual of a frame
/// eq        subspace equality bound (sine of largest principal angle)
/// psd       eigenvalue floor for positivity tests
struct ToleranceContext {
    double rank_rel = 1e-10;
    double ortho = 1e-10;
    double eq = 1e-9;
    double psd = 1e-9;

    void validate() const {
        if (!(rank_rel > 0.0 && rank_rel < 1.0))
            throw std::invalid_argument("ToleranceContext: rank_rel must be in (0,1)");
        if (!(ortho > 0.0) || !(eq > 0.0) || !(psd > 0.0))
            throw std::invalid_argument("ToleranceContext: tolerances must be positive");
    }
};

} // namespace relkit
