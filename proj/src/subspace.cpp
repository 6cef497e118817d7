#include "relkit/subspace.hpp"

#include <stdexcept>

namespace relkit {

Subspace Subspace::zero(Index ambient, const ToleranceContext& tol) {
    Subspace s;
    s.ambient_dim = ambient;
    s.frame = Matrix::Zero(ambient, 0);
    s.tol = tol;
    return s;
}

Subspace Subspace::full(Index ambient, const ToleranceContext& tol) {
    Subspace s;
    s.ambient_dim = ambient;
    s.frame = Matrix::Identity(ambient, ambient);
    s.tol = tol;
    return s;
}

Subspace orthonormalize(const Matrix& m, const ToleranceContext& tol) {
    tol.validate();
    if (!is_finite(m))
        throw std::invalid_argument("orthonormalize: non-finite entries");

    Subspace out;
    out.ambient_dim = m.rows();
    out.tol = tol;
    if (m.cols() == 0 || m.rows() == 0) {
        out.frame = Matrix::Zero(m.rows(), 0);
        return out;
    }

    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.rank_rel * sv(0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 0.0 && sv(i) >= cutoff) ++rank;
    out.frame = svd.matrixU().leftCols(rank);
    return out;
}

namespace {

Matrix projector(const Subspace& s) {
    return s.frame * s.frame.adjoint();
}

} // namespace

double subspace_angle(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("subspace_angle: ambient dimension mismatch");
    if (a.dim() == 0 && b.dim() == 0) return 0.0;
    const double gap = spectral_norm(projector(a) - projector(b));
    return gap > 1.0 ? 1.0 : gap;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    const Index n = a.ambient_dim;
    if (n == 0 || a.dim() == 0 || b.dim() == 0)
        return Subspace::zero(n, a.tol);

    Matrix stacked(2 * n, n);
    stacked.topRows(n) = Matrix::Identity(n, n) - projector(a);
    stacked.bottomRows(n) = Matrix::Identity(n, n) - projector(b);

    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Index null_dim = 0;
    for (Index i = sv.size(); i-- > 0;) {
        if (sv(i) <= a.tol.eq)
            ++null_dim;
        else
            break;
    }
    Subspace out;
    out.ambient_dim = n;
    out.tol = a.tol;
    out.frame = svd.matrixV().rightCols(null_dim);
    return out;
}

Subspace complement(const Subspace& a) {
    const Index n = a.ambient_dim;
    if (a.dim() == 0) return Subspace::full(n, a.tol);
    Eigen::JacobiSVD<Matrix> svd(a.frame, Eigen::ComputeFullU);
    Subspace out;
    out.ambient_dim = n;
    out.tol = a.tol;
    out.frame = svd.matrixU().rightCols(n - a.dim());
    return out;
}

Subspace span_union(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("span_union: ambient dimension mismatch");
    Matrix joined(a.ambient_dim, a.dim() + b.dim());
    joined.leftCols(a.dim()) = a.frame;
    joined.rightCols(b.dim()) = b.frame;
    return orthonormalize(joined, a.tol);
}

bool psd_check(const Matrix& h, double floor) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("psd_check: matrix must be square");
    if (h.rows() == 0) return true;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -floor;
}

} // namespace relkit
