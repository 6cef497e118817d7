#pragma once

#include "relkit/subspace.hpp"

#include <map>
#include <optional>
#include <string>

namespace relkit {

/// Orthogonal decomposition H = M (+) K, with the first dim_m coordinates
/// spanning M.
struct SpaceSplit {
    Index dim_m = 0;
    Index dim_k = 0;

    Index total() const { return dim_m + dim_k; }

    friend bool operator==(const SpaceSplit&, const SpaceSplit&) = default;
};

/// A linear relation in H = C^n, stored as an orthonormal frame of its graph
/// subspace of H (+) H. A column [x; y] of the frame represents the pair
/// {x, y}. Multivalued and non-densely-defined relations are first-class.
class LinearRelation {
public:
    LinearRelation(SpaceSplit split, const Matrix& graph_columns,
                   const ToleranceContext& tol = {});

    /// Graph of a (bounded, everywhere defined) operator a: span [I; a].
    static LinearRelation from_operator(const Matrix& a, SpaceSplit split,
                                        const ToleranceContext& tol = {});

    const SpaceSplit& split() const { return split_; }
    Index space_dim() const { return split_.total(); }
    Index graph_dim() const { return frame_.cols(); }
    const Matrix& frame() const { return frame_; }
    const ToleranceContext& tol() const { return tol_; }

    /// Top n rows of the frame (first pair components).
    Matrix x_block() const { return frame_.topRows(space_dim()); }
    /// Bottom n rows of the frame (second pair components).
    Matrix y_block() const { return frame_.bottomRows(space_dim()); }

    Subspace graph_subspace() const;

private:
    SpaceSplit split_;
    Matrix frame_; // 2n x graph_dim, orthonormal columns
    ToleranceContext tol_;
};

struct RelationParts {
    Subspace dom;
    Subspace ran;
    Subspace ker;
    Subspace mul;
};

struct ClassificationFlags {
    bool symmetric = false;
    bool selfadjoint = false;
    bool nonnegative = false;
    bool nonpositive = false;
    bool accretive = false;
    bool maximal_accretive = false;
    bool dissipative = false;
    bool maximal_dissipative = false;
    bool skew_symmetric = false;
    bool skew_selfadjoint = false;
    bool j_selfadjoint = false;
    bool is_operator = false;
    std::map<std::string, double> residuals;
};

/// Adjoint via the graph: graph(A*) = orthogonal complement of
/// {(y, -x) : (x, y) in graph(A)}.
LinearRelation adjoint(const LinearRelation& r);

/// Swaps the pair components; ker(A^-1) = mul(A), dom(A^-1) = ran(A).
LinearRelation inverse(const LinearRelation& r);

/// {x, alpha*y + beta*x}, i.e. alpha*A + beta*I as a graph operation.
LinearRelation shift_scale(const LinearRelation& r, Complex alpha, Complex beta);

/// {x, -y}.
LinearRelation negate(const LinearRelation& r);

RelationParts parts(const LinearRelation& r);

/// (A - lambda)^-1 as a bounded operator. Requires graph_dim == n and a
/// well-conditioned (Y - lambda X); otherwise SpectrumError.
Matrix resolvent(const LinearRelation& r, Complex lambda);

/// Top-left dim_m x dim_m block of the resolvent.
Matrix compress_resolvent(const LinearRelation& r, Complex lambda);

/// The relation as an n x n matrix, when it is an everywhere defined
/// single-valued operator (X invertible); nullopt otherwise.
std::optional<Matrix> to_operator(const LinearRelation& r);

ClassificationFlags classify(const LinearRelation& r);

/// Fundamental symmetry diag(-I_M, I_K) of the split.
Matrix fundamental_symmetry(const SpaceSplit& split);

/// Graph equality test: sine of largest principal angle between the graphs.
double relation_gap(const LinearRelation& a, const LinearRelation& b);

} // namespace relkit
