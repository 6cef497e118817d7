#pragma once

#include "relkit/matrix.hpp"
#include "relkit/tolerance.hpp"

namespace relkit {

/// A subspace of C^n stored as an orthonormal frame (n x dim).
struct Subspace {
    Index ambient_dim = 0;
    Matrix frame;
    ToleranceContext tol;

    Index dim() const { return frame.cols(); }

    static Subspace zero(Index ambient, const ToleranceContext& tol = {});
    static Subspace full(Index ambient, const ToleranceContext& tol = {});
};

/// Orthonormal basis of the numerical column space of m. Rank is decided by
/// singular values >= rank_rel * sigma_max.
Subspace orthonormalize(const Matrix& m, const ToleranceContext& tol = {});

/// Sine of the largest principal angle between a and b, computed as the
/// spectral norm of the projector difference. 0 iff the subspaces are equal;
/// 1 when the dimensions differ.
double subspace_angle(const Subspace& a, const Subspace& b);

/// a `intersect` b via the nullspace of the stacked projector complements.
Subspace intersect(const Subspace& a, const Subspace& b);

/// Orthogonal complement.
Subspace complement(const Subspace& a);

/// Direct sum a + b (as a span, not necessarily orthogonal inputs).
Subspace span_union(const Subspace& a, const Subspace& b);

/// True iff the minimal eigenvalue of (h + h^H)/2 is >= -floor.
bool psd_check(const Matrix& h, double floor);

} // namespace relkit
