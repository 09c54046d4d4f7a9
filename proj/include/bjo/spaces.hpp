#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bjo/errors.hpp"
#include "bjo/scalar.hpp"

namespace bjo {

/// An element of C(K) for finite K (sup norm) or of discrete L^p(mu)
/// (weighted p-norm). Values are stored as complex doubles; real-field
/// elements keep a zero imaginary part and constructors enforce it.
class FiniteFunction {
public:
    enum class Role { Sup, P };

    static FiniteFunction sup(Field field, std::vector<Cx> values);
    static FiniteFunction lp(Field field, std::vector<Cx> values, double p,
                             std::vector<double> weights = {});

    Field field() const { return field_; }
    Role role() const { return role_; }
    double p() const { return p_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<Cx>& values() const { return values_; }
    const std::vector<double>& weights() const { return weights_; }
    Cx operator[](std::size_t i) const { return values_[i]; }

    double norm() const;
    bool is_zero(double tol = 0.0) const;

    /// x + alpha * y, same space.
    FiniteFunction axpy(Cx alpha, const FiniteFunction& y) const;
    FiniteFunction scaled(Cx c) const;

private:
    FiniteFunction() = default;
    Field field_ = Field::Real;
    Role role_ = Role::Sup;
    double p_ = 0.0;
    std::vector<Cx> values_;
    std::vector<double> weights_;  // empty in Sup role
};

/// Dense matrix regarded as an operator under the spectral norm.
class MatrixOperator {
public:
    MatrixOperator(Field field, std::size_t rows, std::size_t cols);
    static MatrixOperator from_rows(Field field, const std::vector<std::vector<Cx>>& rows);
    static MatrixOperator identity(Field field, std::size_t n);

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Cx& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Cx at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<Cx>& data() const { return a_; }

    MatrixOperator axpy(Cx alpha, const MatrixOperator& y) const;
    MatrixOperator scaled(Cx c) const;
    MatrixOperator adjoint() const;

    std::vector<Cx> apply(const std::vector<Cx>& v) const;
    std::vector<Cx> apply_adjoint(const std::vector<Cx>& v) const;

    /// Largest singular value by power iteration on A^H A (random start,
    /// 2 restarts, residual threshold 1e-12). Deterministic given seed.
    double spectral_norm(std::uint64_t seed = 0) const;

    bool is_zero(double tol = 0.0) const;

private:
    Field field_ = Field::Complex;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Cx> a_;  // row-major
};

struct NormAttainmentSet {
    std::vector<std::size_t> indices;
    double rel_tol = 0.0;
};

/// Indices i with |f[i]| >= (1 - rel_tol) * ||f||. Throws DegenerateZero on f = 0.
NormAttainmentSet norm_attainment_set(const FiniteFunction& f, double rel_tol);

/// A dual-space element phi acting as phi(x) = sum_i coeffs[i] * x[i]
/// (weights already folded into the coefficients for L^p spaces).
struct DualVector {
    Field field = Field::Real;
    std::vector<Cx> coeffs;
};

Cx dual_apply(const DualVector& phi, const FiniteFunction& x);
double dual_norm(const DualVector& phi, const FiniteFunction& space_of);

/// Norming functional: unit dual vector phi with phi(x) = ||x||.
/// Sup role: a phase-aligned point evaluation at an argmax index.
/// P role: the q-conjugate vector, q = p/(p-1), weights folded in.
DualVector norming_functional(const FiniteFunction& x);

/// Rank-one dual functional u v^H from a top singular pair of A:
/// phi(M) = u^H M v, with phi(A) = ||A||_2 and trace-class norm 1.
struct MatrixFunctional {
    std::vector<Cx> u;  // left singular direction, unit
    std::vector<Cx> v;  // right singular direction, unit
};

Cx matrix_dual_apply(const MatrixFunctional& phi, const MatrixOperator& m);
MatrixFunctional norming_functional(const MatrixOperator& a);

// Internal linear algebra used by the matrix procedures. All dense,
// adequate for the <= 32x32 operators handled here.
namespace linalg {

struct EigenSystem {
    std::vector<double> eigenvalues;       // descending
    std::vector<std::vector<Cx>> vectors;  // orthonormal, vectors[k] for eigenvalues[k]
};

/// Cyclic complex Jacobi on a Hermitian matrix (row-major, n x n).
EigenSystem hermitian_eig(const std::vector<Cx>& h, std::size_t n);

struct SingularTriplet {
    double sigma;
    std::vector<Cx> u, v;
};

/// All singular triplets of A, descending sigma, via Jacobi on A^H A.
std::vector<SingularTriplet> singular_triplets(const MatrixOperator& a);

/// Largest eigenvalue of a Hermitian matrix (row-major, n x n), eigenvalues
/// only: Householder tridiagonalization of the real symmetric embedding
/// followed by implicit-shift QL. Exact on degenerate spectra, unlike the
/// power-iteration estimate, and much cheaper than the full Jacobi sweep.
double hermitian_top_eigenvalue(const std::vector<Cx>& h, std::size_t n);

Cx inner(const std::vector<Cx>& x, const std::vector<Cx>& y);  // y^H x
double norm2(const std::vector<Cx>& x);

}  // namespace linalg

}  // namespace bjo
