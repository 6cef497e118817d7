#pragma once

#include "relkit/relation.hpp"

#include <vector>

namespace relkit {

/// Discrete-time passive system with block operator T = [[d, c], [b, f]]
/// acting on M (+) K. Selfadjoint systems have b = c^H and Hermitian d, f.
struct PassiveSystem {
    Matrix d; // M -> M
    Matrix c; // K -> M
    Matrix b; // M -> K
    Matrix f; // K -> K
    bool selfadjoint = false;

    Index dim_m() const { return d.rows(); }
    Index dim_k() const { return f.rows(); }
    SpaceSplit split() const { return {dim_m(), dim_k()}; }

    /// The full block operator.
    Matrix block() const;

    /// Partition a block contraction according to the split; validates the
    /// passivity bound and, if selfadjoint is requested, Hermitian symmetry.
    static PassiveSystem from_block(const Matrix& t, SpaceSplit split,
                                    bool selfadjoint);

    void validate() const;
};

/// Taylor coefficients h_0 .. h_L of the transfer function at 0:
/// h_0 = D, h_k = C F^{k-1} B.
using MomentSequence = std::vector<Matrix>;

/// Omega(z) = D + z C (I - z F)^-1 B.
Matrix transfer(const PassiveSystem& sys, Complex z);

struct SchurFrobeniusValue {
    Matrix value;          // (I - z Omega(z))^-1
    double cross_residual; // gap between the block-inversion and transfer paths
};

/// P_M (I - zT)^-1 |_M computed both by direct block inversion and through
/// the transfer function; the two must agree.
SchurFrobeniusValue schur_frobenius_compress(const PassiveSystem& sys, Complex z);

struct SimplicityReport {
    Index controllable_dim = 0;
    Index observable_dim = 0;
    bool simple = false;
    bool minimal = false;
};

SimplicityReport simplicity_check(const PassiveSystem& sys);

/// First L+1 transfer-function moments of the system.
MomentSequence moments_of(const PassiveSystem& sys, Index count);

struct RealizationResult {
    PassiveSystem system;
    Index state_dim = 0;
    bool rescaled = false; // block norm overshot 1 and was renormalized
};

/// Minimal selfadjoint realization from Hermitian moments via Hankel
/// factorization; the moment list must be long enough to expose the state
/// dimension (RankAmbiguityError otherwise).
RealizationResult ho_kalman_realize(const MomentSequence& moments,
                                    const ToleranceContext& tol = {});

/// Unitary W on K with W F_a = F_b W, W B_a = B_b, C_a = C_b W, if one
/// exists; constructed by matching controllability frames. Inputs must be
/// minimal with matching dimensions.
std::optional<Matrix> unitary_match(const PassiveSystem& a, const PassiveSystem& b,
                                    double residual_tol = 1e-8);

} // namespace relkit
