#include "relkit/transforms.hpp"

#include "relkit/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace relkit;
using relkit::testing::Rng;

namespace {

Matrix scalar(Complex v) {
    Matrix m(1, 1);
    m << v;
    return m;
}

Matrix diag2(Complex a, Complex b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Matrix sym_flip() {
    Matrix t(2, 2);
    t << 0, 1, 1, 0;
    return t;
}

LinearRelation mul_relation() {
    Matrix cols(2, 1);
    cols << 0.0, 1.0;
    return LinearRelation(SpaceSplit{1, 0}, cols);
}

} // namespace

TEST_CASE("p_transform hand values") {
    const SpaceSplit split{1, 1};
    const LinearRelation a = LinearRelation::from_operator(diag2(2.0, 3.0), split);
    // B(2 phi, f) = (phi, 3 f): the operator diag(1/2, 3)
    CHECK(relation_gap(p_transform(a),
                       LinearRelation::from_operator(diag2(0.5, 3.0), split)) <= 1e-12);

    const LinearRelation from_t = relation_from_contraction(sym_flip(), split);
    Matrix b(2, 2);
    b << 0, 1, -1, 0;
    CHECK(relation_gap(p_transform(from_t), LinearRelation::from_operator(b, split)) <=
          1e-12);
}

TEST_CASE("p_transform and j_transform are involutions") {
    Rng rng(7020);
    for (int trial = 0; trial < 30; ++trial) {
        const SpaceSplit split{1 + static_cast<Index>(trial % 2),
                               static_cast<Index>(trial % 3)};
        const Index gdim =
            1 + static_cast<Index>(rng() % static_cast<size_t>(2 * split.total()));
        const LinearRelation r = testing::random_relation(rng, split, gdim);
        CHECK(relation_gap(p_transform(p_transform(r)), r) <= 1e-9);
        CHECK(relation_gap(j_transform(j_transform(r)), r) <= 1e-9);
        CHECK(relation_gap(j_transform(j_transform(r, Complex(0, 1), JSide::k_side),
                                       Complex(0, 1), JSide::k_side),
                           r) <= 1e-9);
    }
}

TEST_CASE("j_transform hand values") {
    const SpaceSplit split{1, 1};
    const LinearRelation a = LinearRelation::from_operator(diag2(2.0, 3.0), split);
    // psi = -2 i phi maps to i phi = -psi/2
    CHECK(relation_gap(j_transform(a),
                       LinearRelation::from_operator(diag2(-0.5, 3.0), split)) <= 1e-12);
    CHECK_THROWS_AS(j_transform(a, Complex(2, 0)), std::invalid_argument);
}

TEST_CASE("J_M then -J_K inverts nonnegative selfadjoint relations") {
    Rng rng(7021);
    for (int trial = 0; trial < 10; ++trial) {
        const SpaceSplit split{1, 1 + static_cast<Index>(trial % 3)};
        const LinearRelation a = testing::random_nonnegative_relation(rng, split);
        const LinearRelation round =
            negate(j_transform(j_transform(a), Complex(0, 1), JSide::k_side));
        CHECK(relation_gap(round, inverse(a)) <= 1e-9);
    }
}

TEST_CASE("cayley hand values") {
    const SpaceSplit one{1, 0};
    CHECK(std::abs(cayley(LinearRelation::from_operator(scalar(0.0), one))(0, 0) -
                   Complex(-1, 0)) <= 1e-12);
    CHECK(std::abs(cayley(LinearRelation::from_operator(scalar(1.0), one))(0, 0) -
                   Complex(0, -1)) <= 1e-12);
    CHECK(std::abs(cayley(mul_relation())(0, 0) - Complex(1, 0)) <= 1e-12);
}

TEST_CASE("inverse_cayley hand values and round trips") {
    const SpaceSplit one{1, 0};
    CHECK(relation_gap(inverse_cayley(scalar(-1.0), one),
                       LinearRelation::from_operator(scalar(0.0), one)) <= 1e-12);
    CHECK(relation_gap(inverse_cayley(scalar(1.0), one), mul_relation()) <= 1e-12);
    CHECK(relation_gap(inverse_cayley(scalar(Complex(0, -1)), one),
                       LinearRelation::from_operator(scalar(1.0), one)) <= 1e-12);
    CHECK_THROWS_AS(inverse_cayley(scalar(2.0), one), std::invalid_argument);

    Rng rng(7022);
    for (int trial = 0; trial < 15; ++trial) {
        const SpaceSplit split{1, 1 + static_cast<Index>(trial % 4)};
        const LinearRelation a = testing::random_selfadjoint_relation(rng, split);
        const Matrix u = cayley(a);
        CHECK((u.adjoint() * u - Matrix::Identity(split.total(), split.total())).norm() <=
              1e-10);
        CHECK(relation_gap(inverse_cayley(u, split), a) <= 1e-9);
        // mul(A) = ker(I - U)
        const Index n = split.total();
        const Index ker_dim =
            n - orthonormalize(Matrix(Matrix::Identity(n, n) - u)).dim();
        CHECK(parts(a).mul.dim() == ker_dim);
    }
}

TEST_CASE("contraction_transform hand values") {
    const SpaceSplit split{1, 1};
    CHECK(contraction_transform(
              LinearRelation::from_operator(Matrix::Identity(2, 2), split))
              .norm() <= 1e-12);
    CHECK((contraction_transform(
               LinearRelation::from_operator(Matrix::Zero(2, 2), split)) -
           Matrix::Identity(2, 2))
              .norm() <= 1e-12);
    CHECK((contraction_transform(relation_from_contraction(
               -Matrix::Identity(2, 2), split)) +
           Matrix::Identity(2, 2))
              .norm() <= 1e-12);
    CHECK((contraction_transform(
               LinearRelation::from_operator(diag2(2.0, 3.0), split)) -
           diag2(-1.0 / 3.0, -0.5))
              .norm() <= 1e-12);
}

TEST_CASE("relation_from_contraction endpoints") {
    const SpaceSplit split{1, 1};
    // T = I gives the zero operator's graph H x {0} read as A = 0? No: it is
    // the relation with ker = H, the inverse of {0} x H.
    const LinearRelation from_id =
        relation_from_contraction(Matrix::Identity(2, 2), split);
    CHECK(relation_gap(from_id,
                       LinearRelation::from_operator(Matrix::Zero(2, 2), split)) <=
          1e-12);
    const ClassificationFlags fl = classify(from_id);
    CHECK(fl.selfadjoint);
    CHECK(fl.nonnegative);

    const LinearRelation from_minus =
        relation_from_contraction(-Matrix::Identity(2, 2), split);
    Matrix mul_cols(4, 2);
    mul_cols.setZero();
    mul_cols(2, 0) = 1.0;
    mul_cols(3, 1) = 1.0;
    CHECK(relation_gap(from_minus, LinearRelation(split, mul_cols)) <= 1e-12);

    CHECK_THROWS_AS(relation_from_contraction(2.0 * Matrix::Identity(2, 2), split),
                    std::invalid_argument);

    // worked example: compression of the T = [[0,1],[1,0]] relation
    const LinearRelation a = relation_from_contraction(sym_flip(), split);
    const Complex lambda(0.5, 1.25);
    CHECK(std::abs(compress_resolvent(a, lambda)(0, 0) + 1.0 / (2.0 * lambda)) <= 1e-12);
}

TEST_CASE("contraction transform pairs with nonnegative selfadjointness") {
    Rng rng(7023);
    for (int trial = 0; trial < 15; ++trial) {
        const SpaceSplit split{1, 1 + static_cast<Index>(trial % 4)};
        const Matrix t =
            testing::random_selfadjoint_contraction(rng, split.total());
        const LinearRelation a = relation_from_contraction(t, split);
        const ClassificationFlags fl = classify(a);
        CHECK(fl.selfadjoint);
        CHECK(fl.nonnegative);
        CHECK((contraction_transform(a) - t).norm() <= 1e-10);

        // converse: a random nonnegative selfadjoint relation transforms to a
        // selfadjoint contraction
        const LinearRelation b = testing::random_nonnegative_relation(rng, split);
        const Matrix tb = contraction_transform(b);
        CHECK(asymmetry_residual(tb) <= 1e-10);
        CHECK(spectral_norm(tb) <= 1.0 + 1e-10);
        CHECK(relation_gap(relation_from_contraction(tb, split), b) <= 1e-9);
    }
}

TEST_CASE("adjoint preservation under the graph transforms") {
    Rng rng(7024);
    for (int trial = 0; trial < 20; ++trial) {
        const SpaceSplit split{1, 1 + static_cast<Index>(trial % 3)};
        const Index gdim =
            1 + static_cast<Index>(rng() % static_cast<size_t>(2 * split.total()));
        const LinearRelation a = testing::random_relation(rng, split, gdim);

        // P(A*) = J (P A)* J
        const LinearRelation lhs = p_transform(adjoint(a));
        const LinearRelation pa_star = adjoint(p_transform(a));
        const Matrix j = fundamental_symmetry(split);
        Matrix cols(2 * split.total(), pa_star.graph_dim());
        cols.topRows(split.total()) = j * pa_star.x_block();
        cols.bottomRows(split.total()) = j * pa_star.y_block();
        CHECK(relation_gap(lhs, LinearRelation(split, cols)) <= 1e-9);

        // J(A*) = (J A)*
        CHECK(relation_gap(j_transform(adjoint(a)), adjoint(j_transform(a))) <= 1e-9);
    }
}

TEST_CASE("p_transform preserves real parts frame-wise") {
    Rng rng(7025);
    for (int trial = 0; trial < 20; ++trial) {
        const SpaceSplit split{1 + static_cast<Index>(trial % 2),
                               1 + static_cast<Index>(trial % 3)};
        const Index m = split.dim_m;
        const Index n = split.total();
        const Index gdim =
            1 + static_cast<Index>(rng() % static_cast<size_t>(2 * n));
        const LinearRelation a = testing::random_relation(rng, split, gdim);

        // map every frame column through P by hand and compare Re(y, x)
        for (Index col = 0; col < gdim; ++col) {
            const Vector x = a.frame().col(col).head(n);
            const Vector y = a.frame().col(col).tail(n);
            Vector u(n), v(n);
            u << y.head(m), x.tail(n - m);
            v << x.head(m), y.tail(n - m);
            const double re_a = (x.adjoint() * y)(0, 0).real();
            const double re_b = (u.adjoint() * v)(0, 0).real();
            CHECK(re_a == doctest::Approx(re_b).epsilon(1e-12));
        }
        CHECK(classify(a).accretive == classify(p_transform(a)).accretive);
    }
}

TEST_CASE("minimal_span hand values") {
    const SpaceSplit split{1, 1};
    // diagonal A never couples M to K
    const LinearRelation d = LinearRelation::from_operator(diag2(2.0, 3.0), split);
    const Subspace span_d = minimal_span(d, {Complex(-1, 0), Complex(0, 1)});
    CHECK(span_d.dim() == 1);
    Matrix e1(2, 1);
    e1 << 1, 0;
    CHECK(subspace_angle(span_d, orthonormalize(e1)) <= 1e-12);

    const LinearRelation coupled = relation_from_contraction(sym_flip(), split);
    CHECK(minimal_span(coupled).dim() == 2);

    const LinearRelation flat =
        LinearRelation::from_operator(scalar(5.0), SpaceSplit{1, 0});
    CHECK(minimal_span(flat).dim() == 1);

    CHECK_THROWS_AS(minimal_span(d, {Complex(2, 0)}), SpectrumError);
}

TEST_CASE("minimality is preserved by the graph transforms") {
    Rng rng(7026);
    const std::vector<Complex> left_probes{Complex(-1, 0), Complex(-0.5, 0),
                                           Complex(-2, 0), Complex(-1, 1),
                                           Complex(-1, -1), Complex(-3, 0.5)};
    for (int trial = 0; trial < 15; ++trial) {
        const SpaceSplit split{1, 1 + static_cast<Index>(trial % 3)};
        const LinearRelation a = testing::random_nonnegative_relation(rng, split);
        const Subspace base = minimal_span(a, left_probes);
        const Subspace via_p = minimal_span(p_transform(a), left_probes);
        const Subspace via_j = minimal_span(j_transform(a), left_probes);
        // equal as subspaces, not merely of equal dimension
        CHECK(subspace_angle(base, via_p) <= 1e-8);
        CHECK(subspace_angle(base, via_j) <= 1e-8);
    }
}

TEST_CASE("power span matches resolvent span for contractions") {
    Rng rng(7027);
    for (int trial = 0; trial < 15; ++trial) {
        const SpaceSplit split{1, 1 + static_cast<Index>(trial % 4)};
        const Matrix t = testing::random_selfadjoint_contraction(rng, split.total());
        const LinearRelation a = relation_from_contraction(t, split);
        const Subspace via_resolvent = minimal_span(a);
        const Subspace via_powers = power_span(t, split);
        CHECK(via_resolvent.dim() == via_powers.dim());
        CHECK(subspace_angle(via_resolvent, via_powers) <= 1e-8);
    }
}
