#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "bjo/bj.hpp"
#include "bjo/spaces.hpp"

namespace bjo {

enum class NormKind { InjectiveExact, DeltaP, MinSpectral, InjectiveEstimated };

/// A formal sum  sum_i c_i (x_i (x) y_i)  of elementary tensors over two
/// declared factor spaces with a declared cross norm.
struct TensorTerm {
    Cx coeff{1.0};
    FiniteFunction x, y;
};

struct TensorElement {
    NormKind kind = NormKind::InjectiveExact;
    std::vector<TensorTerm> terms;

    bool is_zero() const;
    Field field() const;
};

struct MatrixTensorTerm {
    Cx coeff{1.0};
    MatrixOperator x, y;
};

struct MatrixTensorElement {
    std::vector<MatrixTensorTerm> terms;  // norm kind is MinSpectral
    bool is_zero() const;
};

/// C(K1) (x) C(K2) -> C(K1 x K2): grid function h[(i,j)] = f[i] * g[j],
/// extended linearly over the terms. Row-major product index (i * n2 + j).
FiniteFunction ck_identify(const FiniteFunction& f, const FiniteFunction& g);
FiniteFunction ck_identify(const TensorElement& u);

/// L^p (x) L^p -> L^p of the product measure: product values and product
/// weights.
FiniteFunction lp_identify(const FiniteFunction& f, const FiniteFunction& g);
FiniteFunction lp_identify(const TensorElement& u);

/// Kronecker product, row-major block ordering (a_11 B block first).
MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator materialize(const MatrixTensorElement& u);

struct NormBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool exact = false;
};

/// Injective-norm bounds: lower by alternating maximization over the dual
/// unit balls (monotone, multistart), upper by sum |c_i| ||x_i|| ||y_i||.
/// When the exact identification applies (both factors sup-norm) the exact
/// value is returned as both bounds.
NormBounds injective_norm_estimate(const TensorElement& u, int restarts = 16,
                                   std::uint64_t seed = 0);

/// Decides u1 perp_BJ u2 by minimizing mu -> ||u1 + mu u2|| under the exact
/// identified norm, or via estimator bounds (may return Inconclusive).
Verdict pencil_min(const TensorElement& u1, const TensorElement& u2, Tolerances tol = {},
                   std::uint64_t seed = 0);
Verdict pencil_min(const MatrixTensorElement& u1, const MatrixTensorElement& u2,
                   Tolerances tol = {});

}  // namespace bjo
