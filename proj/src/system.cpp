#include "relkit/system.hpp"

#include "relkit/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace relkit {

Matrix PassiveSystem::block() const {
    const Index m = dim_m();
    const Index k = dim_k();
    Matrix t(m + k, m + k);
    t.topLeftCorner(m, m) = d;
    t.topRightCorner(m, k) = c;
    t.bottomLeftCorner(k, m) = b;
    t.bottomRightCorner(k, k) = f;
    return t;
}

PassiveSystem PassiveSystem::from_block(const Matrix& t, SpaceSplit split,
                                        bool selfadjoint) {
    const Index m = split.dim_m;
    const Index k = split.dim_k;
    if (t.rows() != m + k || t.cols() != m + k)
        throw std::invalid_argument("PassiveSystem: block size does not match split");
    PassiveSystem sys;
    sys.d = t.topLeftCorner(m, m);
    sys.c = t.topRightCorner(m, k);
    sys.b = t.bottomLeftCorner(k, m);
    sys.f = t.bottomRightCorner(k, k);
    sys.selfadjoint = selfadjoint;
    sys.validate();
    return sys;
}

void PassiveSystem::validate() const {
    if (d.cols() != dim_m() || c.rows() != dim_m() || c.cols() != dim_k() ||
        b.rows() != dim_k() || b.cols() != dim_m() || f.cols() != dim_k())
        throw std::invalid_argument("PassiveSystem: inconsistent block shapes");
    const Matrix t = block();
    if (!is_finite(t))
        throw std::invalid_argument("PassiveSystem: non-finite entries");
    if (spectral_norm(t) > 1.0 + 1e-8)
        throw std::invalid_argument("PassiveSystem: block norm exceeds 1, not passive");
    if (selfadjoint && asymmetry_residual(t) > 1e-8 * std::max(1.0, t.norm()))
        throw std::invalid_argument("PassiveSystem: selfadjoint flag but block not Hermitian");
}

namespace {

Matrix solve_conditioned(const Matrix& lhs, const Matrix& rhs, double rank_rel,
                         const char* what) {
    Eigen::JacobiSVD<Matrix> svd(lhs);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= rank_rel * sv(0) || sv(0) == 0.0)
        throw SpectrumError(std::string(what) + ": singular point");
    return lhs.colPivHouseholderQr().solve(rhs);
}

} // namespace

Matrix transfer(const PassiveSystem& sys, Complex z) {
    const Index k = sys.dim_k();
    if (k == 0) return sys.d;
    const Matrix lhs = Matrix::Identity(k, k) - z * sys.f;
    const Matrix solved = solve_conditioned(lhs, sys.b, 1e-13, "transfer");
    return sys.d + z * sys.c * solved;
}

SchurFrobeniusValue schur_frobenius_compress(const PassiveSystem& sys, Complex z) {
    const Index m = sys.dim_m();
    const Index n = m + sys.dim_k();
    const Matrix omega = transfer(sys, z);
    const Matrix via_transfer = solve_conditioned(
        Matrix::Identity(m, m) - z * omega, Matrix::Identity(m, m), 1e-13,
        "schur_frobenius_compress");
    const Matrix full = solve_conditioned(Matrix::Identity(n, n) - z * sys.block(),
                                          Matrix::Identity(n, n), 1e-13,
                                          "schur_frobenius_compress");
    const Matrix direct = full.topLeftCorner(m, m);
    SchurFrobeniusValue out;
    out.value = via_transfer;
    out.cross_residual = (direct - via_transfer).norm();
    return out;
}

namespace {

Subspace krylov_span(const Matrix& op, const Matrix& seed, Index depth_cap,
                     const ToleranceContext& tol) {
    Subspace span = orthonormalize(seed, tol);
    Matrix block = seed;
    for (Index step = 1; step < depth_cap; ++step) {
        block = op * block;
        Subspace grown = span_union(span, orthonormalize(block, tol));
        if (grown.dim() == span.dim()) break;
        span = grown;
        if (span.dim() == span.ambient_dim) break;
    }
    return span;
}

} // namespace

SimplicityReport simplicity_check(const PassiveSystem& sys) {
    const Index k = sys.dim_k();
    SimplicityReport rep;
    if (k == 0) {
        rep.simple = rep.minimal = true;
        return rep;
    }
    ToleranceContext tol;
    const Subspace controllable = krylov_span(sys.f, sys.b, k, tol);
    const Subspace observable =
        krylov_span(sys.f.adjoint(), sys.c.adjoint(), k, tol);
    rep.controllable_dim = controllable.dim();
    rep.observable_dim = observable.dim();
    rep.simple = span_union(controllable, observable).dim() == k;
    rep.minimal = rep.controllable_dim == k && rep.observable_dim == k;
    return rep;
}

MomentSequence moments_of(const PassiveSystem& sys, Index count) {
    MomentSequence out;
    out.reserve(static_cast<size_t>(count));
    if (count <= 0) return out;
    out.push_back(sys.d);
    Matrix power = sys.b; // F^{k-1} B
    for (Index k = 1; k < count; ++k) {
        out.push_back(sys.c * power);
        power = sys.f * power;
    }
    return out;
}

RealizationResult ho_kalman_realize(const MomentSequence& moments,
                                    const ToleranceContext& tol) {
    if (moments.empty())
        throw RankAmbiguityError("ho_kalman_realize: empty moment sequence");
    const Index m = moments[0].rows();
    if (m == 0 || moments[0].cols() != m)
        throw std::invalid_argument("ho_kalman_realize: h_0 must be square and nonempty");
    double scale = 0.0;
    for (const Matrix& h : moments) {
        if (h.rows() != m || h.cols() != m)
            throw std::invalid_argument("ho_kalman_realize: inconsistent moment shapes");
        scale = std::max(scale, h.norm());
        if (asymmetry_residual(h) > 1e-8 * std::max(1.0, h.norm()))
            throw std::invalid_argument("ho_kalman_realize: moments must be Hermitian");
    }

    const Index ell = static_cast<Index>(moments.size()) - 1; // highest index L
    const Index q = ell / 2;
    if (q < 1)
        throw RankAmbiguityError(
            "ho_kalman_realize: moment sequence too short to expose the state space");

    // Block Hankel H_{ij} = h_{1+i+j} and its shift H'_{ij} = h_{2+i+j}.
    Matrix hank(q * m, q * m), shifted(q * m, q * m);
    for (Index i = 0; i < q; ++i)
        for (Index j = 0; j < q; ++j) {
            hank.block(i * m, j * m, m, m) = moments[static_cast<size_t>(1 + i + j)];
            shifted.block(i * m, j * m, m, m) = moments[static_cast<size_t>(2 + i + j)];
        }

    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hank));
    const Eigen::VectorXd eigs = es.eigenvalues(); // ascending
    const double top = eigs.cwiseAbs().maxCoeff();

    Index rank = 0;
    if (top > 0.0) {
        const double cutoff = tol.rank_rel * top;
        for (Index i = 0; i < eigs.size(); ++i) {
            const double a = std::abs(eigs(i));
            if (a > cutoff) {
                if (a < 10.0 * cutoff)
                    throw RankAmbiguityError(
                        "ho_kalman_realize: no clear singular-value gap at tolerance");
                ++rank;
            }
        }
        for (Index i = eigs.size() - rank; i < eigs.size(); ++i)
            if (eigs(i) <= 0.0)
                throw RankAmbiguityError(
                    "ho_kalman_realize: Hankel matrix is not positive semidefinite; "
                    "moments are not those of a selfadjoint passive system");
    }

    PassiveSystem sys;
    sys.selfadjoint = true;
    sys.d = hermitize(moments[0]);
    if (rank == 0) {
        sys.c = Matrix::Zero(m, 0);
        sys.b = Matrix::Zero(0, m);
        sys.f = Matrix::Zero(0, 0);
    } else {
        const Matrix u = es.eigenvectors().rightCols(rank);
        Eigen::VectorXd lam = eigs.tail(rank);
        const Eigen::VectorXd sqrt_lam = lam.cwiseSqrt();
        const Matrix obs = u * sqrt_lam.asDiagonal().toDenseMatrix().cast<Complex>();
        sys.c = obs.topRows(m);
        sys.b = sys.c.adjoint();
        const Matrix mid = u.adjoint() * shifted * u;
        const Eigen::VectorXd inv_sqrt = sqrt_lam.cwiseInverse();
        sys.f = hermitize(inv_sqrt.asDiagonal().toDenseMatrix().cast<Complex>() * mid *
                          inv_sqrt.asDiagonal().toDenseMatrix().cast<Complex>());
    }

    RealizationResult result;
    result.state_dim = rank;

    // Roundoff from the factorization may push the block norm slightly past 1.
    const double norm = spectral_norm(sys.block());
    if (norm > 1.0 + 1e-8)
        throw std::invalid_argument(
            "ho_kalman_realize: moments do not define a passive system");
    if (norm > 1.0) {
        const Matrix t = sys.block() / norm;
        sys = PassiveSystem::from_block(t, sys.split(), true);
        result.rescaled = true;
    }
    sys.validate();

    // Reproduction check guards against a Hankel window too short for the
    // true state dimension.
    const MomentSequence check = moments_of(sys, ell + 1);
    for (size_t k = 1; k < moments.size(); ++k)
        if ((check[k] - moments[k]).norm() > 1e-8 * std::max(1.0, scale))
            throw RankAmbiguityError(
                "ho_kalman_realize: realized system does not reproduce the moments; "
                "state dimension not resolvable from this window");

    result.system = sys;
    return result;
}

std::optional<Matrix> unitary_match(const PassiveSystem& a, const PassiveSystem& b,
                                    double residual_tol) {
    if (a.dim_m() != b.dim_m() || a.dim_k() != b.dim_k())
        throw std::invalid_argument("unitary_match: dimension mismatch");
    if (!simplicity_check(a).minimal || !simplicity_check(b).minimal)
        throw std::invalid_argument("unitary_match: inputs must be minimal");

    const Index k = a.dim_k();
    const Index m = a.dim_m();
    if (k == 0) return Matrix::Zero(0, 0);

    Matrix ka(k, k * m), kb(k, k * m);
    Matrix pa = a.b, pb = b.b;
    for (Index j = 0; j < k; ++j) {
        ka.middleCols(j * m, m) = pa;
        kb.middleCols(j * m, m) = pb;
        pa = a.f * pa;
        pb = b.f * pb;
    }

    // W Ka = Kb on the (full) controllability frame.
    Eigen::JacobiSVD<Matrix> svd(ka, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-13 * sv(0))
        throw std::invalid_argument("unitary_match: controllability frame is rank deficient");
    const Matrix pinv = svd.matrixV() *
                        sv.cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() *
                        svd.matrixU().adjoint();
    const Matrix w = kb * pinv;

    const double scale = std::max(1.0, a.block().norm());
    const bool ok =
        (w.adjoint() * w - Matrix::Identity(k, k)).norm() <= residual_tol &&
        (w * a.f - b.f * w).norm() <= residual_tol * scale &&
        (w * a.b - b.b).norm() <= residual_tol * scale &&
        (a.c - b.c * w).norm() <= residual_tol * scale;
    if (!ok) return std::nullopt;
    return w;
}

} // namespace relkit
