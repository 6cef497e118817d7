#include "relkit/relation.hpp"

#include "relkit/errors.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace relkit {

LinearRelation::LinearRelation(SpaceSplit split, const Matrix& graph_columns,
                               const ToleranceContext& tol)
    : split_(split), tol_(tol) {
    const Index n = split.total();
    if (n < 1)
        throw std::invalid_argument("LinearRelation: space dimension must be >= 1");
    if (graph_columns.rows() != 2 * n)
        throw std::invalid_argument("LinearRelation: graph columns must have 2n rows");
    frame_ = orthonormalize(graph_columns, tol).frame;
}

LinearRelation LinearRelation::from_operator(const Matrix& a, SpaceSplit split,
                                             const ToleranceContext& tol) {
    const Index n = split.total();
    if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("from_operator: matrix size does not match split");
    Matrix cols(2 * n, n);
    cols.topRows(n) = Matrix::Identity(n, n);
    cols.bottomRows(n) = a;
    return LinearRelation(split, cols, tol);
}

Subspace LinearRelation::graph_subspace() const {
    Subspace s;
    s.ambient_dim = 2 * space_dim();
    s.frame = frame_;
    s.tol = tol_;
    return s;
}

LinearRelation adjoint(const LinearRelation& r) {
    const Index n = r.space_dim();
    // (k, k') in A*  iff  [k; k'] is orthogonal to every [y; -x], {x,y} in A.
    Matrix flipped(2 * n, r.graph_dim());
    flipped.topRows(n) = r.y_block();
    flipped.bottomRows(n) = -r.x_block();
    Subspace flip_span = orthonormalize(flipped, r.tol());
    return LinearRelation(r.split(), complement(flip_span).frame, r.tol());
}

LinearRelation inverse(const LinearRelation& r) {
    const Index n = r.space_dim();
    Matrix swapped(2 * n, r.graph_dim());
    swapped.topRows(n) = r.y_block();
    swapped.bottomRows(n) = r.x_block();
    return LinearRelation(r.split(), swapped, r.tol());
}

LinearRelation shift_scale(const LinearRelation& r, Complex alpha, Complex beta) {
    const Index n = r.space_dim();
    Matrix cols(2 * n, r.graph_dim());
    cols.topRows(n) = r.x_block();
    cols.bottomRows(n) = alpha * r.y_block() + beta * r.x_block();
    return LinearRelation(r.split(), cols, r.tol());
}

LinearRelation negate(const LinearRelation& r) {
    return shift_scale(r, Complex(-1.0, 0.0), Complex(0.0, 0.0));
}

RelationParts parts(const LinearRelation& r) {
    const Index n = r.space_dim();
    RelationParts p;
    p.dom = orthonormalize(r.x_block(), r.tol());
    p.ran = orthonormalize(r.y_block(), r.tol());

    // ker: first components of graph vectors with vanishing second component,
    // obtained from the intersection with H x {0} (and symmetrically for mul).
    Matrix top_half(2 * n, n);
    top_half.topRows(n) = Matrix::Identity(n, n);
    top_half.bottomRows(n).setZero();
    Subspace h_times_zero = orthonormalize(top_half, r.tol());
    Subspace zero_times_h = complement(h_times_zero);

    Subspace ker_pairs = intersect(r.graph_subspace(), h_times_zero);
    p.ker = orthonormalize(ker_pairs.frame.topRows(n), r.tol());

    Subspace mul_pairs = intersect(r.graph_subspace(), zero_times_h);
    p.mul = orthonormalize(mul_pairs.frame.bottomRows(n), r.tol());
    return p;
}

namespace {

// Solve R * Z = X for R, rejecting ill-conditioned Z. The scale floor of 1
// reflects that Z is built from an orthonormal frame, so an overall tiny Z
// is itself a spectrum hit, not a benign scaling.
Matrix solve_right(const Matrix& x, const Matrix& z, double rank_rel,
                   const char* what) {
    Eigen::JacobiSVD<Matrix> svd(z);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= rank_rel * std::max(sv(0), 1.0))
        throw SpectrumError(std::string(what) + ": point is numerically in the spectrum");
    return z.transpose()
        .colPivHouseholderQr()
        .solve(x.transpose())
        .transpose();
}

} // namespace

Matrix resolvent(const LinearRelation& r, Complex lambda) {
    const Index n = r.space_dim();
    if (r.graph_dim() != n)
        throw SpectrumError("resolvent: graph dimension != n, resolvent set is empty");
    const Matrix z = r.y_block() - lambda * r.x_block();
    return solve_right(r.x_block(), z, r.tol().rank_rel, "resolvent");
}

Matrix compress_resolvent(const LinearRelation& r, Complex lambda) {
    if (r.split().dim_m < 1)
        throw std::invalid_argument("compress_resolvent: dim_m must be >= 1");
    const Index m = r.split().dim_m;
    return resolvent(r, lambda).topLeftCorner(m, m);
}

std::optional<Matrix> to_operator(const LinearRelation& r) {
    const Index n = r.space_dim();
    if (r.graph_dim() != n) return std::nullopt;
    const Matrix x = r.x_block();
    Eigen::JacobiSVD<Matrix> svd(x);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= r.tol().rank_rel * std::max(sv(0), 1.0))
        return std::nullopt;
    return x.transpose()
        .colPivHouseholderQr()
        .solve(r.y_block().transpose())
        .transpose();
}

Matrix fundamental_symmetry(const SpaceSplit& split) {
    Matrix j = Matrix::Identity(split.total(), split.total());
    j.topLeftCorner(split.dim_m, split.dim_m) *= -1.0;
    return j;
}

double relation_gap(const LinearRelation& a, const LinearRelation& b) {
    return subspace_angle(a.graph_subspace(), b.graph_subspace());
}

namespace {

bool resolvent_exists(const LinearRelation& r, Complex lambda) {
    try {
        resolvent(r, lambda);
        return true;
    } catch (const SpectrumError&) {
        return false;
    }
}

} // namespace

ClassificationFlags classify(const LinearRelation& r) {
    const Index n = r.space_dim();
    const auto& tol = r.tol();
    ClassificationFlags fl;

    const Matrix x = r.x_block();
    const Matrix y = r.y_block();
    const Matrix xy = x.adjoint() * y; // gram of the form (f', f) on the graph
    const Matrix sym_residual = xy - xy.adjoint();
    const Matrix re_part = xy + xy.adjoint();
    const Matrix im_part = Complex(0, -1) * sym_residual;

    fl.residuals["symmetry"] = sym_residual.norm();
    fl.residuals["hermitian_asymmetry"] = asymmetry_residual(xy);

    const double scale = std::max(1.0, xy.norm());
    fl.symmetric = sym_residual.norm() <= tol.eq * scale;
    fl.selfadjoint = fl.symmetric && r.graph_dim() == n;
    fl.nonnegative = fl.symmetric && psd_check(xy, tol.psd);
    fl.nonpositive = fl.symmetric && psd_check(-xy, tol.psd);
    fl.accretive = psd_check(re_part, tol.psd);
    fl.dissipative = psd_check(im_part, tol.psd);
    fl.skew_symmetric = re_part.norm() <= tol.eq * scale;
    fl.skew_selfadjoint = fl.skew_symmetric && r.graph_dim() == n;
    fl.maximal_accretive =
        fl.accretive && r.graph_dim() == n && resolvent_exists(r, Complex(-1.0, 0.0));
    fl.maximal_dissipative =
        fl.dissipative && r.graph_dim() == n && resolvent_exists(r, Complex(0.0, -1.0));

    fl.is_operator = parts(r).mul.dim() == 0;

    // Krein-space selfadjointness w.r.t. J = diag(-I_M, I_K):
    // graph(A) == graph(J A* J).
    const LinearRelation adj = adjoint(r);
    const Matrix j = fundamental_symmetry(r.split());
    Matrix cols(2 * n, adj.graph_dim());
    cols.topRows(n) = j * adj.x_block();
    cols.bottomRows(n) = j * adj.y_block();
    const LinearRelation krein_adj(r.split(), cols, tol);
    const double gap = relation_gap(r, krein_adj);
    fl.residuals["j_selfadjoint_gap"] = gap;
    fl.j_selfadjoint = gap <= tol.eq;
    return fl;
}

} // namespace relkit
