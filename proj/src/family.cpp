#include "relkit/family.hpp"

#include "relkit/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relkit {

Complex moebius_z_of_lambda(Complex lambda) {
    if (lambda == Complex(1.0, 0.0))
        throw std::invalid_argument("moebius_z_of_lambda: pole at lambda = 1");
    return (1.0 + lambda) / (1.0 - lambda);
}

Complex moebius_lambda_of_z(Complex z) {
    if (z == Complex(-1.0, 0.0))
        throw std::invalid_argument("moebius_lambda_of_z: pole at z = -1");
    return (z - 1.0) / (z + 1.0);
}

Complex sqrt_upper(Complex lambda) {
    if (lambda.imag() == 0.0) {
        if (lambda.real() >= 0.0)
            throw BranchCutError("sqrt_upper: lambda on the cut [0, +inf)");
        return Complex(0.0, std::sqrt(-lambda.real()));
    }
    double arg = std::arg(lambda);
    if (arg < 0.0) arg += 2.0 * std::numbers::pi;
    return std::sqrt(std::abs(lambda)) *
           Complex(std::cos(0.5 * arg), std::sin(0.5 * arg));
}

RsFunction::RsFunction(Index dim, std::function<Matrix(Complex)> fn)
    : dim_(dim), fn_(std::move(fn)) {}

RsFunction RsFunction::from_system(const PassiveSystem& sys) {
    RsFunction out(sys.dim_m(), [sys](Complex z) { return transfer(sys, z); });
    out.system_ = sys;
    return out;
}

RsFunction upsilon_transform(const RsFunction& omega) {
    const Index m = omega.dim();
    auto fn = [omega, m](Complex z) {
        const Matrix om = omega(z);
        const Matrix lhs = Matrix::Identity(m, m) - z * om;
        Eigen::JacobiSVD<Matrix> svd(lhs);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-13 * sv(0))
            throw SpectrumError("upsilon_transform: I - z Omega(z) is singular");
        const Matrix num = z * Matrix::Identity(m, m) - om;
        return Matrix(lhs.transpose().colPivHouseholderQr().solve(num.transpose()).transpose());
    };
    return RsFunction(m, fn);
}

namespace {

bool off_nonneg_axis(Complex lambda) {
    return !(lambda.imag() == 0.0 && lambda.real() >= 0.0);
}

bool off_real_axis(Complex lambda) { return lambda.imag() != 0.0; }

LinearRelation graph_in_m(Index m, const Matrix& top, const Matrix& bottom,
                          const ToleranceContext& tol) {
    Matrix cols(2 * m, top.cols());
    cols.topRows(m) = top;
    cols.bottomRows(m) = bottom;
    return LinearRelation(SpaceSplit{m, 0}, cols, tol);
}

struct BackendDim {
    Index operator()(const SystemBackend& b) const { return b.system.dim_m(); }
    Index operator()(const RelationBackend& b) const { return b.relation.split().dim_m; }
    Index operator()(const FixedPointBackend& b) const { return b.dim_m; }
    Index operator()(const ConstantBackend& b) const { return b.value.space_dim(); }
    Index operator()(const InnerBackend& b) const { return b.generator.space_dim(); }
    Index operator()(const DerivedBackend& b) const { return b.dim_m; }
};

} // namespace

OperatorFamily::OperatorFamily(FamilyBackend backend, const ToleranceContext& tol)
    : backend_(std::move(backend)), tol_(tol) {
    dim_m_ = std::visit(BackendDim{}, backend_);
    if (dim_m_ < 1)
        throw std::invalid_argument("OperatorFamily: dim_m must be >= 1");
}

bool OperatorFamily::in_domain(Complex lambda) const {
    return std::visit(
        [&](const auto& b) -> bool {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, SystemBackend>) {
                if (b.bridge == Bridge::direct_schur) return off_real_axis(lambda);
                return off_nonneg_axis(lambda);
            } else if constexpr (std::is_same_v<T, RelationBackend>) {
                switch (b.tag) {
                    case RepresentationTag::opexpr:
                    case RepresentationTag::arep:
                        return off_real_axis(lambda);
                    case RepresentationTag::brep:
                        return lambda.real() < 0.0;
                    default:
                        return off_nonneg_axis(lambda) && lambda != Complex(0.0, 0.0);
                }
            } else if constexpr (std::is_same_v<T, DerivedBackend>) {
                return b.domain ? b.domain(lambda) : off_nonneg_axis(lambda);
            } else {
                return off_nonneg_axis(lambda) && lambda != Complex(0.0, 0.0);
            }
        },
        backend_);
}

namespace {

struct BackendEval {
    Complex lambda;
    const ToleranceContext& tol;

    LinearRelation operator()(const SystemBackend& b) const {
        const Index m = b.system.dim_m();
        const Matrix id = Matrix::Identity(m, m);
        if (b.bridge == Bridge::direct_schur) {
            // Generic Nevanlinna family of a Schur function.
            if (lambda.imag() <= 0.0) {
                const Complex z = (lambda + Complex(0, 1)) / (lambda - Complex(0, 1));
                const Matrix psi = transfer(b.system, z);
                return graph_in_m(m, id - psi, Complex(0, -1) * (id + psi), tol);
            }
            const Complex zbar = (std::conj(lambda) + Complex(0, 1)) /
                                 (std::conj(lambda) - Complex(0, 1));
            const Matrix psi = transfer(b.system, zbar).adjoint();
            return graph_in_m(m, id - psi, Complex(0, 1) * (id + psi), tol);
        }
        const Matrix om = transfer(b.system, moebius_z_of_lambda(lambda));
        if (b.bridge == Bridge::formula1_q)
            return graph_in_m(m, id - om, id + om, tol);
        return graph_in_m(m, id + om, om - id, tol);
    }

    LinearRelation operator()(const RelationBackend& b) const {
        const Index m = b.relation.split().dim_m;
        const Matrix id = Matrix::Identity(m, m);
        switch (b.tag) {
            case RepresentationTag::opexpr:
            case RepresentationTag::aarep:
            case RepresentationTag::arep:
            case RepresentationTag::opexpr3: {
                // F(l) = -K(l)^-1 - l on the graph {K h, -h - l K h}.
                const Matrix k = compress_resolvent(b.relation, lambda);
                return graph_in_m(m, k, -id - lambda * k, tol);
            }
            case RepresentationTag::brep: {
                const Matrix k = compress_resolvent(b.relation, lambda);
                return graph_in_m(m, k, id + lambda * k, tol);
            }
            case RepresentationTag::einundzwan: {
                const Matrix k = compress_resolvent(b.relation, lambda);
                return graph_in_m(m, k, -id / lambda - k, tol);
            }
            case RepresentationTag::einundzwan2: {
                // L = P_M (I - lambda B)^-1 |M, then R = I - L^-1.
                const LinearRelation one_minus =
                    shift_scale(b.relation, -lambda, Complex(1.0, 0.0));
                const Matrix l = resolvent(one_minus, Complex(0.0, 0.0))
                                     .topLeftCorner(m, m);
                return graph_in_m(m, l, l - id, tol);
            }
        }
        throw std::logic_error("unreachable representation tag");
    }

    LinearRelation operator()(const FixedPointBackend& b) const {
        const Complex root = sqrt_upper(lambda);
        const Complex value = b.kind == FixedPointKind::q0 ? Complex(0, 1) / root
                                                           : Complex(0, 1) * root;
        return LinearRelation::from_operator(
            value * Matrix::Identity(b.dim_m, b.dim_m), SpaceSplit{b.dim_m, 0}, tol);
    }

    LinearRelation operator()(const ConstantBackend& b) const { return b.value; }

    LinearRelation operator()(const InnerBackend& b) const {
        if (b.stieltjes) return shift_scale(b.generator, -1.0 / lambda, 0.0);
        return shift_scale(b.generator, lambda, 0.0);
    }

    LinearRelation operator()(const DerivedBackend& b) const { return b.eval(lambda); }
};

} // namespace

LinearRelation OperatorFamily::eval(Complex lambda) const {
    if (!in_domain(lambda))
        throw BranchCutError("OperatorFamily::eval: lambda outside the backend domain");
    return std::visit(BackendEval{lambda, tol_}, backend_);
}

OperatorFamily family_from_omega(const PassiveSystem& sys, Bridge bridge,
                                 const ToleranceContext& tol) {
    const RsCheckReport rep = rs_check(RsFunction::from_system(sys), default_z_grid(), tol);
    if (!rep.rs_class)
        throw std::invalid_argument(
            "family_from_omega: transfer function fails the class membership checks");
    return OperatorFamily(SystemBackend{sys, bridge}, tol);
}

RsFunction omega_from_family(const OperatorFamily& fam, FamilyFlavor flavor) {
    const Index m = fam.dim_m();
    auto fn = [fam, flavor, m](Complex z) -> Matrix {
        const Complex lambda = moebius_lambda_of_z(z);
        const LinearRelation value = fam.eval(lambda);
        if (flavor == FamilyFlavor::stieltjes) {
            // Omega = I - 2 (I + Q)^-1
            const Matrix w = resolvent(value, Complex(-1.0, 0.0));
            return Matrix(Matrix::Identity(m, m) - 2.0 * w);
        }
        // Omega = -I + 2 (I - R)^-1
        const LinearRelation one_minus = shift_scale(value, -1.0, 1.0);
        const Matrix w = resolvent(one_minus, Complex(0.0, 0.0));
        return Matrix(-Matrix::Identity(m, m) + 2.0 * w);
    };
    return RsFunction(m, fn);
}

namespace {

Matrix imag_part(const Matrix& m) { return (m - m.adjoint()) / Complex(0, 2); }

} // namespace

RsCheckReport rs_check(const RsFunction& omega, const std::vector<Complex>& z_grid,
                       const ToleranceContext& tol) {
    RsCheckReport rep;
    rep.range_ok = rep.symmetry_ok = rep.inequality_ok = rep.kernel_ok = true;
    const Index m = omega.dim();
    const Matrix id = Matrix::Identity(m, m);

    std::vector<Complex> upper, lower;
    for (Complex z : z_grid) {
        if (z.imag() == 0.0) {
            if (!(z.real() > -1.0 && z.real() < 1.0))
                throw std::invalid_argument("rs_check: real grid point outside (-1,1)");
            const Matrix val = omega(z);
            const double herm = asymmetry_residual(val);
            const Matrix h = hermitize(val);
            const bool ok = herm <= tol.eq * std::max(1.0, val.norm()) &&
                            psd_check(id - h, tol.psd) && psd_check(id + h, tol.psd);
            rep.rows.push_back({z, "range", herm, ok});
            rep.range_ok = rep.range_ok && ok;
            continue;
        }
        (z.imag() > 0.0 ? upper : lower).push_back(z);

        const Matrix val = omega(z);
        const Matrix conj_val = omega(std::conj(z));
        const double sym = (conj_val - val.adjoint()).norm();
        const bool sym_ok = sym <= 1e-8 * std::max(1.0, val.norm());
        rep.rows.push_back({z, "symmetry", sym, sym_ok});
        rep.symmetry_ok = rep.symmetry_ok && sym_ok;

        const Matrix ineq =
            id - val.adjoint() * val -
            (1.0 - std::norm(z)) / z.imag() * imag_part(val);
        const bool ineq_ok = psd_check(ineq, tol.psd);
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(ineq), Eigen::EigenvaluesOnly);
        rep.rows.push_back({z, "inequality", -es.eigenvalues().minCoeff(), ineq_ok});
        rep.inequality_ok = rep.inequality_ok && ineq_ok;
    }

    auto kernel_gram = [&](const std::vector<Complex>& pts) {
        const Index p = static_cast<Index>(pts.size());
        Matrix gram(p * m, p * m);
        std::vector<Matrix> vals(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) vals[i] = omega(pts[i]);
        for (Index i = 0; i < p; ++i)
            for (Index j = 0; j < p; ++j) {
                const Complex z = pts[static_cast<size_t>(j)];
                const Complex w = pts[static_cast<size_t>(i)];
                const Matrix& oz = vals[static_cast<size_t>(j)];
                const Matrix& ow = vals[static_cast<size_t>(i)];
                gram.block(i * m, j * m, m, m) =
                    id - ow.adjoint() * oz -
                    (1.0 - std::conj(w) * z) / (z - std::conj(w)) * (oz - ow.adjoint());
            }
        return gram;
    };
    for (auto* half : {&upper, &lower}) {
        if (half->size() > 12) half->resize(12);
        if (half->empty()) continue;
        const Matrix gram = kernel_gram(*half);
        const bool ok = psd_check(gram, tol.psd * std::max(1.0, gram.norm()));
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(gram), Eigen::EigenvaluesOnly);
        rep.rows.push_back({(*half)[0], "kernel", -es.eigenvalues().minCoeff(), ok});
        rep.kernel_ok = rep.kernel_ok && ok;
    }

    rep.rs_class = rep.range_ok && rep.symmetry_ok && rep.inequality_ok && rep.kernel_ok;
    return rep;
}

namespace {

// Smoothness probe for the holomorphic continuation across (-inf, 0):
// relative second difference of t -> (M(t) + i)^-1 at local step |x|/1000.
// The probe point -i is regular for every selfadjoint value, so the probe
// never trips over isolated eigenvalues the way a real probe would.
bool holomorphy_probe(const OperatorFamily& fam, double x, double* residual) {
    const double h = std::abs(x) * 1e-3;
    std::array<Matrix, 3> g;
    int idx = 0;
    for (double t : {x - h, x, x + h})
        g[idx++] = resolvent(fam.eval(Complex(t, 0.0)), Complex(0.0, -1.0));
    const double second = (g[0] - 2.0 * g[1] + g[2]).norm();
    *residual = second / std::max(g[1].norm(), 1e-12);
    return *residual <= 1e-4;
}

} // namespace

FamilyVerdict classify_family(const OperatorFamily& fam,
                              const std::vector<Complex>& grid) {
    const auto& tol = fam.tol();
    FamilyVerdict verdict;

    std::vector<Complex> upper, lower, negative;
    for (Complex lambda : grid) {
        if (!fam.in_domain(lambda)) continue;
        if (lambda.imag() > 0.0)
            upper.push_back(lambda);
        else if (lambda.imag() < 0.0)
            lower.push_back(lambda);
        else if (lambda.real() < 0.0)
            negative.push_back(lambda);
    }
    if (upper.empty() || lower.empty())
        throw std::invalid_argument(
            "classify_family: grid must contain points in both half-planes");

    bool nevanlinna = true;
    double sym_gap = 0.0, dissip_fail = 0.0;
    for (Complex lambda : upper) {
        const LinearRelation value = fam.eval(lambda);
        const ClassificationFlags fl = classify(value);
        const bool max_dissip = fl.dissipative && value.graph_dim() == fam.dim_m();
        if (!max_dissip) {
            nevanlinna = false;
            dissip_fail = 1.0;
            verdict.reasons.push_back("value not maximal dissipative in C+");
            break;
        }
    }
    if (nevanlinna) {
        for (Complex lambda : upper) {
            const double gap =
                relation_gap(fam.eval(std::conj(lambda)), adjoint(fam.eval(lambda)));
            sym_gap = std::max(sym_gap, gap);
        }
        if (sym_gap > tol.eq) {
            nevanlinna = false;
            verdict.reasons.push_back("conjugate symmetry M(conj l) = M(l)* fails");
        }
    }
    verdict.residuals["symmetry_gap"] = sym_gap;
    verdict.residuals["dissipativity"] = dissip_fail;

    // mul M(lambda) must not depend on lambda.
    if (nevanlinna) {
        std::optional<Subspace> mul0;
        double mul_gap = 0.0;
        for (const auto* bucket : {&upper, &lower, &negative})
            for (Complex lambda : *bucket) {
                const Subspace mul = parts(fam.eval(lambda)).mul;
                if (!mul0) {
                    mul0 = mul;
                    continue;
                }
                if (mul.dim() != mul0->dim()) {
                    mul_gap = 1.0;
                } else {
                    mul_gap = std::max(mul_gap, subspace_angle(*mul0, mul));
                }
            }
        verdict.residuals["mul_constancy"] = mul_gap;
        if (mul_gap > tol.eq) {
            nevanlinna = false;
            verdict.reasons.push_back("multivalued part varies with lambda");
        }
    }
    verdict.nevanlinna = nevanlinna;

    if (nevanlinna && !negative.empty()) {
        bool nonneg = true, nonpos = true, sa = true;
        for (Complex x : negative) {
            const ClassificationFlags fl = classify(fam.eval(x));
            sa = sa && fl.selfadjoint;
            nonneg = nonneg && fl.nonnegative;
            nonpos = nonpos && fl.nonpositive;
        }
        bool smooth = true;
        double worst = 0.0;
        for (Complex x : negative) {
            double res = 0.0;
            smooth = holomorphy_probe(fam, x.real(), &res) && smooth;
            worst = std::max(worst, res);
        }
        verdict.holomorphy_heuristic = smooth;
        verdict.residuals["holomorphy_second_difference"] = worst;
        if (!smooth)
            verdict.reasons.push_back(
                "holomorphy heuristic failed on the negative axis (sampled test only)");
        verdict.stieltjes = sa && nonneg && smooth;
        verdict.inverse_stieltjes = sa && nonpos && smooth;
    }

    if (verdict.stieltjes || verdict.inverse_stieltjes) {
        const FamilyFlavor flavor = verdict.stieltjes ? FamilyFlavor::stieltjes
                                                      : FamilyFlavor::inverse_stieltjes;
        const InnerCheckResult inner =
            inner_check(fam, default_inner_y_grid(), flavor);
        verdict.inner = inner.inner;
        verdict.residuals["inner_real_part"] = inner.max_residual;
    }

    if (verdict.stieltjes && verdict.inverse_stieltjes) {
        // Both classes at once force the constant singular graph {Pf, (I-P)f}.
        const LinearRelation v0 = fam.eval(Complex(-1.0, 0.0));
        const Matrix gram = v0.x_block().adjoint() * v0.y_block();
        double const_gap = gram.norm();
        for (Complex x : negative)
            const_gap = std::max(const_gap, relation_gap(v0, fam.eval(x)));
        verdict.residuals["projection_graph_gap"] = const_gap;
        if (const_gap > tol.eq)
            verdict.reasons.push_back(
                "inconsistent verdict: both classes but not a constant projection graph");
    }

    if (const auto* sb = std::get_if<SystemBackend>(&fam.backend())) {
        verdict.rs_class =
            rs_check(RsFunction::from_system(sb->system), default_z_grid(), tol).rs_class;
    }
    return verdict;
}

InnerCheckResult inner_check(const OperatorFamily& fam, const std::vector<double>& y_grid,
                             FamilyFlavor flavor, double tol) {
    InnerCheckResult out;
    if (y_grid.empty())
        throw std::invalid_argument("inner_check: empty sampling grid");

    double max_res = 0.0;
    for (double y : y_grid) {
        if (y <= 0.0)
            throw std::invalid_argument("inner_check: y grid must be positive");
        const LinearRelation value = fam.eval(Complex(0.0, y));
        const Matrix gram = value.x_block().adjoint() * value.y_block();
        max_res = std::max(max_res, 0.5 * (gram + gram.adjoint()).norm());
    }
    out.max_residual = max_res;
    bool inner = max_res <= tol;

    if (inner) {
        // Fit the generator from the first sample and validate on the rest.
        const Complex l0 = Complex(0.0, y_grid.front());
        const LinearRelation fitted =
            flavor == FamilyFlavor::stieltjes
                ? shift_scale(fam.eval(l0), -l0, 0.0)
                : shift_scale(fam.eval(l0), 1.0 / l0, 0.0);
        for (size_t i = 1; i < y_grid.size() && inner; ++i) {
            const Complex l = Complex(0.0, y_grid[i]);
            const LinearRelation candidate =
                flavor == FamilyFlavor::stieltjes
                    ? shift_scale(fam.eval(l), -l, 0.0)
                    : shift_scale(fam.eval(l), 1.0 / l, 0.0);
            inner = relation_gap(fitted, candidate) <= tol;
        }
        // The generator must also hold off the imaginary axis.
        for (Complex l : {Complex(-1.0, 0.0), Complex(-0.5, 0.5)}) {
            if (!inner) break;
            if (!fam.in_domain(l)) continue;
            const LinearRelation candidate =
                flavor == FamilyFlavor::stieltjes ? shift_scale(fam.eval(l), -l, 0.0)
                                                  : shift_scale(fam.eval(l), 1.0 / l, 0.0);
            inner = relation_gap(fitted, candidate) <= tol;
        }
        if (inner) out.generator = fitted;
    }
    out.inner = inner;
    return out;
}

bool scale_invariance_check(const OperatorFamily& fam, double c, int p,
                            const std::vector<Complex>& grid) {
    if (!(c > 0.0) || c == 1.0)
        throw std::invalid_argument(
            "scale_invariance_check: c must be positive and != 1");
    if (p != 0 && p != 1 && p != -1)
        throw std::invalid_argument("scale_invariance_check: p must be in {0, 1, -1}");
    const double factor = std::pow(c, p);
    for (Complex lambda : grid) {
        if (!fam.in_domain(lambda) || !fam.in_domain(c * lambda)) continue;
        const LinearRelation scaled_arg = fam.eval(c * lambda);
        const LinearRelation scaled_val = shift_scale(fam.eval(lambda), factor, 0.0);
        if (relation_gap(scaled_arg, scaled_val) > fam.tol().eq) return false;
    }
    return true;
}

OperatorFamily transformer_apply(const OperatorFamily& fam, Transformer which) {
    // Cheap hypothesis probe: the value at -1 of a Stieltjes (resp. inverse
    // Stieltjes) family is a nonnegative (nonpositive) selfadjoint relation.
    const ClassificationFlags probe = classify(fam.eval(Complex(-1.0, 0.0)));
    const bool matches = which == Transformer::phi_plus
                             ? probe.selfadjoint && probe.nonnegative
                             : probe.selfadjoint && probe.nonpositive;
    if (!matches)
        throw std::invalid_argument(
            "transformer_apply: family is not in the matching class at lambda = -1");

    DerivedBackend derived;
    derived.label = which == Transformer::phi_plus ? "phi_plus" : "phi_minus";
    derived.dim_m = fam.dim_m();
    derived.domain = [fam](Complex lambda) {
        return fam.in_domain(lambda) && lambda != Complex(0.0, 0.0);
    };
    derived.eval = [fam, which](Complex lambda) {
        const LinearRelation inv = inverse(fam.eval(lambda));
        const Complex factor =
            which == Transformer::phi_plus ? -1.0 / lambda : -lambda;
        return shift_scale(inv, factor, 0.0);
    };
    return OperatorFamily(std::move(derived), fam.tol());
}

OperatorFamily fixed_point_family(FixedPointKind kind, Index dim_m,
                                  const ToleranceContext& tol) {
    return OperatorFamily(FixedPointBackend{kind, dim_m}, tol);
}

namespace {

struct TagPolicy {
    bool needs_nonnegative = false;
    bool needs_selfadjoint = false;
    bool needs_j_selfadjoint_accretive = false;
    std::function<bool(Complex)> admissible;
};

TagPolicy policy_for(RepresentationTag tag) {
    TagPolicy p;
    switch (tag) {
        case RepresentationTag::opexpr:
        case RepresentationTag::arep:
            p.needs_selfadjoint = true;
            p.admissible = off_real_axis;
            break;
        case RepresentationTag::brep:
            p.needs_j_selfadjoint_accretive = true;
            p.admissible = [](Complex l) { return l.real() < 0.0; };
            break;
        default:
            p.needs_nonnegative = true;
            p.admissible = [](Complex l) {
                return off_nonneg_axis(l) && l != Complex(0.0, 0.0);
            };
            break;
    }
    return p;
}

} // namespace

VerificationReport verify_representation(const OperatorFamily& fam,
                                         const LinearRelation& rel,
                                         RepresentationTag tag,
                                         const std::vector<Complex>& grid,
                                         double tolerance) {
    VerificationReport rep;
    rep.tag = tag;
    rep.tolerance = tolerance;

    const TagPolicy policy = policy_for(tag);
    const ClassificationFlags fl = classify(rel);
    if (policy.needs_nonnegative) {
        if (!fl.selfadjoint)
            rep.hypothesis_failure = "not selfadjoint";
        else if (!fl.nonnegative)
            rep.hypothesis_failure = "not nonnegative";
    } else if (policy.needs_selfadjoint) {
        if (!fl.selfadjoint) rep.hypothesis_failure = "not selfadjoint";
    } else if (policy.needs_j_selfadjoint_accretive) {
        if (!fl.j_selfadjoint)
            rep.hypothesis_failure = "not j-selfadjoint";
        else if (!fl.maximal_accretive)
            rep.hypothesis_failure = "not maximal accretive";
    }
    rep.hypothesis_ok = rep.hypothesis_failure.empty();
    if (!rep.hypothesis_ok) {
        rep.pass = false;
        return rep;
    }

    const Index m = rel.split().dim_m;
    const auto& tol = fam.tol();
    const Matrix id = Matrix::Identity(m, m);

    for (Complex lambda : grid) {
        if (!policy.admissible(lambda)) continue;
        LinearRelation lhs = LinearRelation::from_operator(id, SpaceSplit{m, 0}, tol);
        LinearRelation rhs = lhs;
        switch (tag) {
            case RepresentationTag::opexpr:
            case RepresentationTag::aarep:
            case RepresentationTag::arep: {
                const Matrix k = compress_resolvent(rel, lambda);
                lhs = LinearRelation::from_operator(k, SpaceSplit{m, 0}, tol);
                rhs = negate(inverse(shift_scale(fam.eval(lambda), 1.0, lambda)));
                break;
            }
            case RepresentationTag::brep: {
                const Matrix k = compress_resolvent(rel, lambda);
                lhs = LinearRelation::from_operator(k, SpaceSplit{m, 0}, tol);
                rhs = inverse(shift_scale(fam.eval(lambda), 1.0, -lambda));
                break;
            }
            case RepresentationTag::opexpr3: {
                const Matrix k = compress_resolvent(rel, lambda);
                lhs = LinearRelation::from_operator(k, SpaceSplit{m, 0}, tol);
                const LinearRelation flipped = negate(fam.eval(1.0 / lambda));
                rhs = negate(inverse(shift_scale(flipped, 1.0, lambda)));
                break;
            }
            case RepresentationTag::einundzwan: {
                const Matrix k = compress_resolvent(rel, lambda);
                lhs = fam.eval(lambda);
                rhs = graph_in_m(m, k, -id / lambda - k, tol);
                break;
            }
            case RepresentationTag::einundzwan2: {
                const LinearRelation one_minus = shift_scale(rel, -lambda, 1.0);
                const Matrix l =
                    resolvent(one_minus, Complex(0.0, 0.0)).topLeftCorner(m, m);
                lhs = fam.eval(lambda);
                rhs = graph_in_m(m, l, l - id, tol);
                break;
            }
        }
        VerificationRow row;
        row.lambda = lambda;
        row.residual = relation_gap(lhs, rhs);
        row.pass = row.residual <= tolerance;
        rep.max_residual = std::max(rep.max_residual, row.residual);
        rep.rows.push_back(row);
    }
    std::sort(rep.rows.begin(), rep.rows.end(), [](const auto& a, const auto& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    rep.pass = !rep.rows.empty() &&
               std::all_of(rep.rows.begin(), rep.rows.end(),
                           [](const VerificationRow& r) { return r.pass; });
    return rep;
}

std::vector<Complex> default_lambda_grid() {
    std::vector<Complex> grid;
    for (int k = -3; k <= 3; ++k)
        grid.push_back(Complex(-std::pow(2.0, k), 0.0));
    const double pi = std::numbers::pi;
    for (double r : {0.25, 1.0, 4.0})
        for (double th : {pi / 3, 2 * pi / 3, 0.9 * pi, -pi / 3, -2 * pi / 3, -0.9 * pi})
            grid.push_back(std::polar(r, th));
    std::sort(grid.begin(), grid.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return grid;
}

std::vector<Complex> default_z_grid() {
    std::vector<Complex> grid;
    for (Complex lambda : default_lambda_grid())
        grid.push_back(moebius_z_of_lambda(lambda));
    return grid;
}

std::vector<double> default_inner_y_grid() {
    return {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
}

} // namespace relkit
