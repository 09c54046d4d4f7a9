#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bjo/spaces.hpp"

namespace bjo {

enum class Decision { Orthogonal, NotOrthogonal, Inconclusive };

const char* decision_name(Decision d);

struct ArgminCertificate {
    Cx alpha_star;
    double achieved_norm = 0.0;
};

struct FunctionalCertificate {
    std::vector<Cx> phi;  // dual coefficients over the flattened element
};

struct PointCertificate {
    std::vector<std::size_t> indices;  // 1 or 2 point ids
};

struct HullCertificate {
    std::vector<Cx> support_points;
    std::vector<std::size_t> support_indices;  // point ids the support points came from
    std::vector<double> weights;               // convex coefficients
};

struct WitnessVectorCertificate {
    std::vector<Cx> x;  // unit vector
};

using Certificate = std::variant<std::monostate, ArgminCertificate, FunctionalCertificate,
                                 PointCertificate, HullCertificate, WitnessVectorCertificate>;

struct Verdict {
    Decision decision = Decision::Inconclusive;
    double margin = 0.0;  // min_a ||x+ay|| - ||x||, or criterion-specific signed slack
    Certificate certificate;
    std::map<std::string, double> tolerances_used;
};

struct Tolerances {
    double tol_eq = 1e-9;
    double tol_decision = 1e-7;
};

// ---------------------------------------------------------------------------
// Convex pencil minimization: the global minimum of a -> ||x + a y|| over the
// scalar field, restricted to |a| <= 2||x||/||y|| (lossless).
// ---------------------------------------------------------------------------

struct PencilMinimum {
    Cx alpha;
    double value = 0.0;
};

/// Globally minimizes a convex map over the real line (Field::Real) or the
/// complex plane (Field::Complex) within |alpha| <= radius. Coarse 65-point
/// grid per real dimension, then golden-section sweeps and pattern-search
/// refinement down to step 1e-10 * radius.
PencilMinimum minimize_convex_pencil(const std::function<double(Cx)>& value_at, Field field,
                                     double radius);

// ---------------------------------------------------------------------------
// Decision procedures
// ---------------------------------------------------------------------------

/// Generic definition-chasing decision for any of the supported spaces.
Verdict bj_generic(const FiniteFunction& x, const FiniteFunction& y, Tolerances tol = {});
Verdict bj_generic(const MatrixOperator& x, const MatrixOperator& y, Tolerances tol = {});

/// Complex C(K): 0 in conv{ conj(f(t)) g(t) : t in M_f }.
Verdict bj_ck_complex(const FiniteFunction& f, const FiniteFunction& g, double rel_tol = 1e-9,
                      Tolerances tol = {});

/// Real C(K): two points of M_f where f*g takes both signs (weakly).
Verdict bj_ck_real(const FiniteFunction& f, const FiniteFunction& g, double rel_tol = 1e-9,
                   Tolerances tol = {});

/// Discrete L^p: sum_s w_s g(s) |f(s)|^{p-1} sign(f(s)) = 0, provided f is not
/// in span{g}; the span case falls back to bj_generic.
Verdict bj_lp(const FiniteFunction& f, const FiniteFunction& g, Tolerances tol = {});

/// Spectral norm: bj_generic decision; on Orthogonal additionally searches the
/// top singular subspace of A for a unit witness x with ||Ax|| = ||A|| and
/// <Ax, Bx> = 0.
Verdict bj_matrix(const MatrixOperator& a, const MatrixOperator& b, Tolerances tol = {},
                  std::uint64_t seed = 0);

/// Rank-one operators x (x) y against z (x) w: orthogonal iff <x,z> = 0 or
/// <y,w> = 0.
Verdict bj_rank_one(const std::vector<Cx>& x, const std::vector<Cx>& y, const std::vector<Cx>& z,
                    const std::vector<Cx>& w, Tolerances tol = {});

/// Strong BJ-orthogonality in C(K): some t in M_f with g(t) = 0.
Verdict sbj_ck(const FiniteFunction& f, const FiniteFunction& g, double rel_tol = 1e-9,
               Tolerances tol = {});

/// Builds the James-style functional certificate for an Orthogonal verdict.
/// Throws NoCertificate when the construction misses the tolerance.
FunctionalCertificate functional_certificate(const FiniteFunction& x, const FiniteFunction& y,
                                             const Verdict& verdict, Tolerances tol = {});
FunctionalCertificate functional_certificate(const MatrixOperator& a, const MatrixOperator& b,
                                             const Verdict& verdict, Tolerances tol = {});

// ---------------------------------------------------------------------------
// Certificate validators. Independent code paths from the constructors; each
// recomputes the defining identity of the certificate directly.
// ---------------------------------------------------------------------------

struct ValidationResult {
    bool ok = true;
    std::string message;
};

ValidationResult validate_verdict(const FiniteFunction& x, const FiniteFunction& y,
                                  const Verdict& v, Tolerances tol = {});
ValidationResult validate_verdict(const MatrixOperator& a, const MatrixOperator& b,
                                  const Verdict& v, Tolerances tol = {});

// 2D hull helpers shared with the tensor experiments.
namespace hull {

/// Convex hull by monotone chain, counterclockwise, no duplicate endpoint.
std::vector<Cx> convex_hull(std::vector<Cx> points);

/// Signed distance from the origin to the hull of the given points:
/// negative inside (depth), positive outside (distance).
double origin_distance(const std::vector<Cx>& points);

/// Convex weights expressing 0 over at most three of the points, when the
/// origin lies in the hull (within tol). Returns chosen indices + weights.
struct Combination {
    std::vector<std::size_t> indices;
    std::vector<double> weights;
};
Combination origin_combination(const std::vector<Cx>& points, double tol);

}  // namespace hull

}  // namespace bjo
