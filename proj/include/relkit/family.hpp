#pragma once

#include "relkit/system.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace relkit {

/// z = (1 + lambda)/(1 - lambda); maps C \ R+ onto C \ {(-inf,-1] u [1,inf)}.
Complex moebius_z_of_lambda(Complex lambda);
/// lambda = (z - 1)/(z + 1).
Complex moebius_lambda_of_z(Complex z);

/// Square root with the branch Im(lambda) > 0 => Im(sqrt) > 0, continued
/// across (-inf, 0); the cut sits on [0, +inf) (BranchCutError there).
Complex sqrt_upper(Complex lambda);

/// Operator-valued function of z, holomorphic off (-inf,-1] u [1,inf),
/// candidate member of the combined Nevanlinna-Schur class.
class RsFunction {
public:
    RsFunction(Index dim, std::function<Matrix(Complex)> fn);
    static RsFunction from_system(const PassiveSystem& sys);

    Matrix operator()(Complex z) const { return fn_(z); }
    Index dim() const { return dim_; }
    const std::optional<PassiveSystem>& system() const { return system_; }

private:
    Index dim_;
    std::function<Matrix(Complex)> fn_;
    std::optional<PassiveSystem> system_;
};

/// Upsilon(z) = (zI - Omega(z)) (I - z Omega(z))^-1; stays in the class.
RsFunction upsilon_transform(const RsFunction& omega);

enum class Bridge { formula1_q, formula2_r, direct_schur };

enum class RepresentationTag {
    opexpr,      // M(l)      = -(P_M (A - l)^-1 |M)^-1 - l,     A selfadjoint
    aarep,       // P_M (A - l)^-1 |M = -(R(l) + l)^-1,          A nonneg selfadjoint
    brep,        // P_M (B - l)^-1 |M = (Q(l) - l)^-1,           B J-sa max accretive
    arep,        // P_M (A - l)^-1 |M = -(Q(l) + l)^-1,          A selfadjoint
    opexpr3,     // P_M (A - l)^-1 |M = -(-Q(1/l) + l)^-1,       A nonneg selfadjoint
    einundzwan,  // Q(l) = -(1/l) (P_M (A - l)^-1 |M)^-1 - I,    A nonneg selfadjoint
    einundzwan2, // R(l) = I - (P_M (I - l B)^-1 |M)^-1,         B nonneg selfadjoint
};

enum class FixedPointKind { q0, r0 };
enum class Transformer { phi_plus, phi_minus };
enum class FamilyFlavor { stieltjes, inverse_stieltjes };

struct SystemBackend {
    PassiveSystem system;
    Bridge bridge = Bridge::formula1_q;
};
struct RelationBackend {
    LinearRelation relation;
    RepresentationTag tag = RepresentationTag::opexpr;
};
struct FixedPointBackend {
    FixedPointKind kind = FixedPointKind::q0;
    Index dim_m = 1;
};
struct ConstantBackend {
    LinearRelation value; // a relation in M
};
struct InnerBackend {
    LinearRelation generator; // nonnegative selfadjoint relation in M
    bool stieltjes = true;    // -B/lambda when true, lambda*C otherwise
};
struct DerivedBackend {
    std::function<LinearRelation(Complex)> eval;
    std::function<bool(Complex)> domain;
    std::string label;
    Index dim_m = 0;
};

using FamilyBackend = std::variant<SystemBackend, RelationBackend, FixedPointBackend,
                                   ConstantBackend, InnerBackend, DerivedBackend>;

/// A map lambda -> linear relation in M, backed by one of the realization
/// kinds above. Evaluation is pure; instances are immutable values.
class OperatorFamily {
public:
    explicit OperatorFamily(FamilyBackend backend, const ToleranceContext& tol = {});

    LinearRelation eval(Complex lambda) const;
    bool in_domain(Complex lambda) const;
    Index dim_m() const { return dim_m_; }
    const FamilyBackend& backend() const { return backend_; }
    const ToleranceContext& tol() const { return tol_; }

private:
    FamilyBackend backend_;
    ToleranceContext tol_;
    Index dim_m_;
};

/// Q(l) = {((I - Omega(z))h, (I + Omega(z))h)} (formula1_q) or
/// R(l) = {((I + Omega(z))h, (Omega(z) - I)h)} (formula2_r), z = z(lambda).
/// The transfer function must pass rs_check on the default z-grid.
OperatorFamily family_from_omega(const PassiveSystem& sys, Bridge bridge,
                                 const ToleranceContext& tol = {});

/// Inverse bridge: Omega(z) = I - 2 (I + Q(lambda(z)))^-1 for a Stieltjes
/// family, Omega(z) = -I + 2 (I - R(lambda(z)))^-1 for an inverse Stieltjes
/// family.
RsFunction omega_from_family(const OperatorFamily& fam, FamilyFlavor flavor);

struct RsCheckRow {
    Complex z;
    std::string check;
    double residual = 0.0;
    bool pass = true;
};

struct RsCheckReport {
    bool rs_class = false;
    bool range_ok = false;      // -I <= Omega(x) <= I on (-1,1)
    bool symmetry_ok = false;   // Omega(conj z) = Omega(z)^H
    bool inequality_ok = false; // I - O^H O - (1-|z|^2) Im O / Im z >= 0
    bool kernel_ok = false;     // Gram positivity per half-plane
    std::vector<RsCheckRow> rows;
};

RsCheckReport rs_check(const RsFunction& omega, const std::vector<Complex>& z_grid,
                       const ToleranceContext& tol = {});

struct FamilyVerdict {
    bool nevanlinna = false;
    bool stieltjes = false;
    bool inverse_stieltjes = false;
    bool rs_class = false; // only meaningful for system-backed families
    bool inner = false;
    bool holomorphy_heuristic = false; // sampled smoothness, not a proof
    std::vector<std::string> reasons;
    std::map<std::string, double> residuals;
};

FamilyVerdict classify_family(const OperatorFamily& fam,
                              const std::vector<Complex>& grid);

struct InnerCheckResult {
    bool inner = false;
    double max_residual = 0.0;
    std::optional<LinearRelation> generator; // fitted B (or C)
};

/// Re (f', f) = 0 on the imaginary axis, cross-checked against the
/// characterization Q = -B/lambda (resp. R = lambda C) fitted from one
/// sample and validated on the rest.
InnerCheckResult inner_check(const OperatorFamily& fam, const std::vector<double>& y_grid,
                             FamilyFlavor flavor, double tol = 1e-8);

/// graph(eval(c lambda)) == graph(c^p eval(lambda)) over the grid.
bool scale_invariance_check(const OperatorFamily& fam, double c, int p,
                            const std::vector<Complex>& grid);

/// Phi+ : Q -> -Q^-1 / lambda (Stieltjes), Phi- : R -> -lambda R^-1
/// (inverse Stieltjes); graph-level composition.
OperatorFamily transformer_apply(const OperatorFamily& fam, Transformer which);

/// Q0(lambda) = (i/sqrt(lambda)) I and R0(lambda) = i sqrt(lambda) I,
/// the unique fixed points of Phi+ and Phi-.
OperatorFamily fixed_point_family(FixedPointKind kind, Index dim_m,
                                  const ToleranceContext& tol = {});

struct VerificationRow {
    Complex lambda;
    double residual = 0.0;
    bool pass = false;
};

struct VerificationReport {
    RepresentationTag tag = RepresentationTag::aarep;
    bool hypothesis_ok = false;
    std::string hypothesis_failure;
    std::vector<VerificationRow> rows;
    double max_residual = 0.0;
    double tolerance = 1e-8;
    bool pass = false;
};

/// Checks the tag's compressed-resolvent identity between fam and rel at
/// every admissible grid point; identities are compared as relation graphs
/// so that unbounded inverses need no special casing.
VerificationReport verify_representation(const OperatorFamily& fam,
                                         const LinearRelation& rel,
                                         RepresentationTag tag,
                                         const std::vector<Complex>& grid,
                                         double tolerance = 1e-8);

std::vector<Complex> default_lambda_grid();
std::vector<Complex> default_z_grid();
std::vector<double> default_inner_y_grid();

} // namespace relkit
