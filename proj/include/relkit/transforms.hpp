#pragma once

#include "relkit/relation.hpp"

#include <vector>

namespace relkit {

/// Which block of the split a J-type transformation rotates.
enum class JSide { m_side, k_side };

/// Graph transformation ((phi,f),(phi',f')) -> ((phi',f),(phi,f')).
/// An involution; exchanges nonnegative selfadjoint relations with
/// J-selfadjoint maximal accretive ones.
LinearRelation p_transform(const LinearRelation& r);

/// Graph transformation ((phi,f),(phi',f')) -> ((-c phi',f),(c phi,f')) for
/// |c| = 1 (m_side); the k_side variant rotates the K components instead.
LinearRelation j_transform(const LinearRelation& r, Complex c = Complex(0, 1),
                           JSide side = JSide::m_side);

/// Cayley transform U = I - 2i (A + i)^-1, computed on the graph so that
/// ker(I - U) = mul(A) holds exactly.
Matrix cayley(const LinearRelation& r);

/// Inverse Cayley transform: graph spanned by [(I-U)g; i(I+U)g].
LinearRelation inverse_cayley(const Matrix& u, SpaceSplit split,
                              const ToleranceContext& tol = {});

/// T = -I + 2 (I + A)^-1. Selfadjoint contraction iff A is nonnegative
/// selfadjoint.
Matrix contraction_transform(const LinearRelation& r);

/// Inverse of contraction_transform: graph spanned by [(I+T)h; (I-T)h].
/// Requires t to be a selfadjoint contraction within tolerance.
LinearRelation relation_from_contraction(const Matrix& t, SpaceSplit split,
                                         const ToleranceContext& tol = {});

/// Default resolvent probes used for minimality checks.
std::vector<Complex> default_minimality_probes();

/// clos span{ M + (A - lambda)^-1 M : lambda in probes }, closed under
/// repeated application of each resolvent (Krylov depth capped at n with
/// rank-stagnation early exit). The relation is M-minimal iff the result is
/// the full space.
Subspace minimal_span(const LinearRelation& r, const std::vector<Complex>& probes);

/// minimal_span with the default probe set filtered to the resolvent set.
Subspace minimal_span(const LinearRelation& r);

/// span{ T^n M : 0 <= n <= cap } for a matrix T acting on M (+) K.
Subspace power_span(const Matrix& t, const SpaceSplit& split,
                    const ToleranceContext& tol = {});

} // namespace relkit
