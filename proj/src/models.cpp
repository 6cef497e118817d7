#include "relkit/models.hpp"

#include "relkit/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace relkit {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 32)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 32");
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};

constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};

constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
    Complex value;
    double error;
};

PanelEstimate evaluate_panel(const std::function<Complex(double)>& f, double a,
                             double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex kronrod(0.0, 0.0);
    Complex gauss(0.0, 0.0);
    for (int i = 0; i < 15; ++i) {
        const Complex fx = f(mid + half * kKronrodNodes[i]);
        kronrod += kKronrodWeights[i] * fx;
        if (i % 2 == 1) {
            const int g = (i - 1) / 2; // 0..6, symmetric about 3
            gauss += kGaussWeights[g <= 3 ? g : 6 - g] * fx;
        }
    }
    kronrod *= half;
    gauss *= half;
    PanelEstimate est;
    est.value = kronrod;
    est.error = std::abs(kronrod - gauss);
    return est;
}

} // namespace

Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const QuadratureSpec& spec) {
    spec.validate();
    struct Panel {
        double a, b;
        PanelEstimate est;
    };
    std::vector<Panel> stack{{a, b, evaluate_panel(f, a, b)}};
    Complex total = stack[0].est.value;
    double total_err = stack[0].est.error;
    int splits = 0;

    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (splits >= spec.max_subdivisions)
            throw QuadratureError("integrate: subdivision budget exhausted");
        // Split the panel with the largest error estimate.
        size_t worst = 0;
        for (size_t i = 1; i < stack.size(); ++i)
            if (stack[i].est.error > stack[worst].est.error) worst = i;
        const Panel panel = stack[worst];
        const double mid = 0.5 * (panel.a + panel.b);
        Panel left{panel.a, mid, evaluate_panel(f, panel.a, mid)};
        Panel right{mid, panel.b, evaluate_panel(f, mid, panel.b)};
        total += left.est.value + right.est.value - panel.est.value;
        total_err += left.est.error + right.est.error - panel.est.error;
        stack[worst] = left;
        stack.push_back(right);
        ++splits;
    }
    return total;
}

Complex l2_model_compress(Complex lambda, const QuadratureSpec& spec) {
    if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
        throw BranchCutError("l2_model_compress: lambda on [0, +inf)");
    // t = tan(s) turns (2/pi) dt/((t^2-lambda)(1+t^2)) into (2/pi) ds/(tan^2 s - lambda).
    auto integrand = [lambda](double s) {
        const double t = std::tan(s);
        return 1.0 / (Complex(t * t, 0.0) - lambda);
    };
    const Complex value =
        integrate(integrand, 0.0, 0.5 * std::numbers::pi, spec);
    return (2.0 / std::numbers::pi) * value;
}

Complex ode_model_compress(Complex lambda) {
    const Complex root = sqrt_upper(lambda); // BranchCutError on [0, inf)
    // Decay of the solution e^{i sqrt(lambda) x} requires Im sqrt(lambda) > 0.
    if (!(root.imag() > 0.0))
        throw BranchCutError("ode_model_compress: no decaying solution on this branch");
    return -1.0 / (Complex(0, 1) * root + lambda);
}

Complex HalfLineModel::closed_form(Complex lambda) {
    return -1.0 / (lambda + Complex(0, 1) * sqrt_upper(lambda));
}

Complex HalfLineModel::compress(Complex lambda) const {
    if (kind == HalfLineModelKind::weighted_l2)
        return l2_model_compress(lambda, quad);
    return ode_model_compress(lambda);
}

OperatorFamily model_family(const HalfLineModel& model, const ToleranceContext& tol) {
    DerivedBackend derived;
    derived.dim_m = 1;
    derived.label = model.kind == HalfLineModelKind::weighted_l2
                        ? "half_line_weighted_l2"
                        : "half_line_ode";
    derived.domain = [](Complex lambda) {
        return !(lambda.imag() == 0.0 && lambda.real() >= 0.0);
    };
    derived.eval = [model, tol](Complex lambda) {
        const Complex compressed = model.compress(lambda);
        const Complex r0 = -1.0 / compressed - lambda;
        Matrix value(1, 1);
        value(0, 0) = r0;
        return LinearRelation::from_operator(value, SpaceSplit{1, 0}, tol);
    };
    return OperatorFamily(std::move(derived), tol);
}

std::vector<ModelCheckRow> model_check(const HalfLineModel& model,
                                       const std::vector<Complex>& grid) {
    std::vector<ModelCheckRow> rows;
    rows.reserve(grid.size());
    for (Complex lambda : grid) {
        ModelCheckRow row;
        row.lambda = lambda;
        row.quadrature = l2_model_compress(lambda, model.quad);
        row.closed_form = HalfLineModel::closed_form(lambda);
        row.abs_err = std::abs(row.quadrature - row.closed_form);
        rows.push_back(row);
    }
    return rows;
}

} // namespace relkit
