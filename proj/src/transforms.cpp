#include "relkit/transforms.hpp"

#include "relkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relkit {

namespace {

struct GraphRows {
    Matrix phi, f, phi_p, f_p; // M / K rows of the X and Y blocks
};

GraphRows split_rows(const LinearRelation& r) {
    const Index m = r.split().dim_m;
    const Index k = r.split().dim_k;
    const Index n = r.space_dim();
    const Matrix& fr = r.frame();
    GraphRows g;
    g.phi = fr.middleRows(0, m);
    g.f = fr.middleRows(m, k);
    g.phi_p = fr.middleRows(n, m);
    g.f_p = fr.middleRows(n + m, k);
    return g;
}

LinearRelation assemble(const LinearRelation& r, const Matrix& phi, const Matrix& f,
                        const Matrix& phi_p, const Matrix& f_p) {
    const Index m = r.split().dim_m;
    const Index k = r.split().dim_k;
    const Index n = r.space_dim();
    Matrix cols(2 * n, r.graph_dim());
    cols.middleRows(0, m) = phi;
    cols.middleRows(m, k) = f;
    cols.middleRows(n, m) = phi_p;
    cols.middleRows(n + m, k) = f_p;
    return LinearRelation(r.split(), cols, r.tol());
}

} // namespace

LinearRelation p_transform(const LinearRelation& r) {
    if (r.split().dim_m < 1)
        throw std::invalid_argument("p_transform: split must have dim_m >= 1");
    const GraphRows g = split_rows(r);
    return assemble(r, g.phi_p, g.f, g.phi, g.f_p);
}

LinearRelation j_transform(const LinearRelation& r, Complex c, JSide side) {
    if (std::abs(std::abs(c) - 1.0) > 1e-12)
        throw std::invalid_argument("j_transform: constant must be unimodular");
    const GraphRows g = split_rows(r);
    if (side == JSide::m_side) {
        if (r.split().dim_m < 1)
            throw std::invalid_argument("j_transform: split must have dim_m >= 1");
        return assemble(r, -c * g.phi_p, g.f, c * g.phi, g.f_p);
    }
    return assemble(r, g.phi, -c * g.f_p, g.phi_p, c * g.f);
}

Matrix cayley(const LinearRelation& r) {
    const Index n = r.space_dim();
    if (r.graph_dim() != n)
        throw SpectrumError("cayley: graph dimension != n");
    // U maps f' + i f  to  f' - i f on the graph.
    const Matrix input = r.y_block() + Complex(0, 1) * r.x_block();
    const Matrix output = r.y_block() - Complex(0, 1) * r.x_block();
    Eigen::JacobiSVD<Matrix> svd(input);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= r.tol().rank_rel * std::max(sv(0), 1.0))
        throw SpectrumError("cayley: -i is in the spectrum");
    return input.transpose()
        .colPivHouseholderQr()
        .solve(output.transpose())
        .transpose();
}

LinearRelation inverse_cayley(const Matrix& u, SpaceSplit split,
                              const ToleranceContext& tol) {
    const Index n = split.total();
    if (u.rows() != n || u.cols() != n)
        throw std::invalid_argument("inverse_cayley: size does not match split");
    const double unitarity = (u.adjoint() * u - Matrix::Identity(n, n)).norm();
    if (unitarity > 1e-8)
        throw std::invalid_argument("inverse_cayley: input is not unitary");
    Matrix cols(2 * n, n);
    cols.topRows(n) = Matrix::Identity(n, n) - u;
    cols.bottomRows(n) = Complex(0, 1) * (Matrix::Identity(n, n) + u);
    return LinearRelation(split, cols, tol);
}

Matrix contraction_transform(const LinearRelation& r) {
    const Index n = r.space_dim();
    return -Matrix::Identity(n, n) + 2.0 * resolvent(r, Complex(-1.0, 0.0));
}

LinearRelation relation_from_contraction(const Matrix& t, SpaceSplit split,
                                         const ToleranceContext& tol) {
    const Index n = split.total();
    if (t.rows() != n || t.cols() != n)
        throw std::invalid_argument("relation_from_contraction: size mismatch");
    if (asymmetry_residual(t) > 1e-8 * std::max(1.0, t.norm()))
        throw std::invalid_argument("relation_from_contraction: t is not selfadjoint");
    if (spectral_norm(t) > 1.0 + 1e-8)
        throw std::invalid_argument("relation_from_contraction: t is not a contraction");
    Matrix cols(2 * n, n);
    cols.topRows(n) = Matrix::Identity(n, n) + t;
    cols.bottomRows(n) = Matrix::Identity(n, n) - t;
    return LinearRelation(split, cols, tol);
}

std::vector<Complex> default_minimality_probes() {
    return {Complex(-1, 0),  Complex(-0.5, 0), Complex(-2, 0),
            Complex(0, 1),   Complex(0, -1),   Complex(1, 1)};
}

namespace {

// Grow `basis` by the resolvent-Krylov sequence R M, R^2 M, ... until the
// rank stagnates or the depth cap is hit.
Subspace krylov_enrich(Subspace basis, const Matrix& op, const Matrix& seed,
                       Index depth_cap) {
    Matrix block = seed;
    for (Index step = 0; step < depth_cap; ++step) {
        block = op * block;
        Subspace grown = span_union(basis, orthonormalize(block, basis.tol));
        if (grown.dim() == basis.dim()) break;
        basis = grown;
        if (basis.dim() == basis.ambient_dim) break;
    }
    return basis;
}

Matrix m_frame(const SpaceSplit& split) {
    Matrix s = Matrix::Zero(split.total(), split.dim_m);
    s.topRows(split.dim_m) = Matrix::Identity(split.dim_m, split.dim_m);
    return s;
}

} // namespace

Subspace minimal_span(const LinearRelation& r, const std::vector<Complex>& probes) {
    if (r.split().dim_m < 1)
        throw std::invalid_argument("minimal_span: dim_m must be >= 1");
    const Index n = r.space_dim();
    const Matrix seed = m_frame(r.split());
    Subspace span = orthonormalize(seed, r.tol());
    for (Complex lambda : probes) {
        const Matrix res = resolvent(r, lambda); // SpectrumError on bad probe
        span = krylov_enrich(span, res, seed, n);
        if (span.dim() == n) break;
    }
    return span;
}

Subspace minimal_span(const LinearRelation& r) {
    std::vector<Complex> usable;
    for (Complex lambda : default_minimality_probes()) {
        try {
            resolvent(r, lambda);
            usable.push_back(lambda);
        } catch (const SpectrumError&) {
        }
    }
    if (usable.empty())
        throw SpectrumError("minimal_span: no default probe lies in the resolvent set");
    return minimal_span(r, usable);
}

Subspace power_span(const Matrix& t, const SpaceSplit& split,
                    const ToleranceContext& tol) {
    if (t.rows() != split.total() || t.cols() != split.total())
        throw std::invalid_argument("power_span: size does not match split");
    const Matrix seed = m_frame(split);
    Subspace span = orthonormalize(seed, tol);
    return krylov_enrich(span, t, seed, split.total());
}

} // namespace relkit
