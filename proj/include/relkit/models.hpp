#pragma once

#include "relkit/family.hpp"

#include <functional>

namespace relkit {

/// Policy for the adaptive quadrature engine. Semi-infinite integrals are
/// mapped to [0, pi/2) by the substitution t = tan(s) before panelling.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 256;

    void validate() const;
};

/// Adaptive Gauss-Kronrod (7-15) integration of a complex-valued integrand
/// over [a, b]. QuadratureError when the panel budget is exhausted.
Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const QuadratureSpec& spec = {});

/// (2/pi) * integral over (0, inf) of dt / ((t^2 - lambda)(1 + t^2)),
/// the compressed resolvent of multiplication by t^2 in L2(R+, rho0 dt)
/// with rho0(t) = (2/pi)/(1+t^2). Equals -1/(lambda + i sqrt(lambda)).
Complex l2_model_compress(Complex lambda, const QuadratureSpec& spec = {});

/// Closed-form compressed resolvent -1/(i sqrt(lambda) + lambda) of the
/// half-line boundary-value model { -u'(0) - lambda u(0) = h, -u'' = lambda u },
/// whose solution decays like e^{i sqrt(lambda) x}.
Complex ode_model_compress(Complex lambda);

enum class HalfLineModelKind { weighted_l2, ode_boundary_triplet };

/// One of the two concrete half-line realizations with compressed resolvent
/// -1/(lambda + i sqrt(lambda)).
///
/// The ode_boundary_triplet flavor carries the boundary maps u -> u(0),
/// u -> u'(0) of the half-line Laplacian as bookkeeping; both flavors expose
/// only the scalar compressed resolvent.
struct HalfLineModel {
    HalfLineModelKind kind = HalfLineModelKind::weighted_l2;
    QuadratureSpec quad;

    /// Quadrature (weighted_l2) or closed-form (ode) compressed resolvent.
    Complex compress(Complex lambda) const;

    /// -1/(lambda + i sqrt(lambda)) on the upper branch of the root.
    static Complex closed_form(Complex lambda);
};

/// The scalar family R0(lambda) = -(compress)^-1 - lambda = i sqrt(lambda),
/// an inverse Stieltjes family and the fixed point of Phi-.
OperatorFamily model_family(const HalfLineModel& model,
                            const ToleranceContext& tol = {});

struct ModelCheckRow {
    Complex lambda;
    Complex quadrature;
    Complex closed_form;
    double abs_err = 0.0;
};

/// Quadrature-vs-closed-form comparison over a grid.
std::vector<ModelCheckRow> model_check(const HalfLineModel& model,
                                       const std::vector<Complex>& grid);

} // namespace relkit
