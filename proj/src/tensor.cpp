#include "bjo/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bjo {

bool TensorElement::is_zero() const {
    for (const auto& t : terms)
        if (std::abs(t.coeff) != 0.0 && !t.x.is_zero() && !t.y.is_zero()) return false;
    return true;
}

Field TensorElement::field() const {
    return terms.empty() ? Field::Real : terms[0].x.field();
}

bool MatrixTensorElement::is_zero() const {
    for (const auto& t : terms)
        if (std::abs(t.coeff) != 0.0 && !t.x.is_zero() && !t.y.is_zero()) return false;
    return true;
}

namespace {

void check_pair(const FiniteFunction& f, const FiniteFunction& g, FiniteFunction::Role role) {
    if (f.role() != role || g.role() != role) throw RoleError("factor role mismatch");
    if (f.field() != g.field()) throw RoleError("factor field mismatch");
}

}  // namespace

FiniteFunction ck_identify(const FiniteFunction& f, const FiniteFunction& g) {
    check_pair(f, g, FiniteFunction::Role::Sup);
    std::vector<Cx> h(f.size() * g.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) h[i * g.size() + j] = f[i] * g[j];
    return FiniteFunction::sup(f.field(), std::move(h));
}

FiniteFunction ck_identify(const TensorElement& u) {
    if (u.terms.empty()) throw RoleError("empty tensor element");
    const std::size_t n1 = u.terms[0].x.size(), n2 = u.terms[0].y.size();
    std::vector<Cx> h(n1 * n2, Cx(0.0));
    for (const auto& t : u.terms) {
        check_pair(t.x, t.y, FiniteFunction::Role::Sup);
        if (t.x.size() != n1 || t.y.size() != n2) throw RoleError("tensor term shape mismatch");
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) h[i * n2 + j] += t.coeff * t.x[i] * t.y[j];
    }
    return FiniteFunction::sup(u.terms[0].x.field(), std::move(h));
}

FiniteFunction lp_identify(const FiniteFunction& f, const FiniteFunction& g) {
    check_pair(f, g, FiniteFunction::Role::P);
    if (f.p() != g.p()) throw RoleError("p mismatch");
    std::vector<Cx> h(f.size() * g.size());
    std::vector<double> w(f.size() * g.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            h[i * g.size() + j] = f[i] * g[j];
            w[i * g.size() + j] = f.weights()[i] * g.weights()[j];
        }
    return FiniteFunction::lp(f.field(), std::move(h), f.p(), std::move(w));
}

FiniteFunction lp_identify(const TensorElement& u) {
    if (u.terms.empty()) throw RoleError("empty tensor element");
    const std::size_t n1 = u.terms[0].x.size(), n2 = u.terms[0].y.size();
    const double p = u.terms[0].x.p();
    std::vector<Cx> h(n1 * n2, Cx(0.0));
    std::vector<double> w(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            w[i * n2 + j] = u.terms[0].x.weights()[i] * u.terms[0].y.weights()[j];
    for (const auto& t : u.terms) {
        check_pair(t.x, t.y, FiniteFunction::Role::P);
        if (t.x.size() != n1 || t.y.size() != n2 || t.x.p() != p || t.y.p() != p)
            throw RoleError("tensor term shape/p mismatch");
        if (t.x.weights() != u.terms[0].x.weights() || t.y.weights() != u.terms[0].y.weights())
            throw RoleError("tensor term weight mismatch");
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) h[i * n2 + j] += t.coeff * t.x[i] * t.y[j];
    }
    return FiniteFunction::lp(u.terms[0].x.field(), std::move(h), p, std::move(w));
}

MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b) {
    if (a.field() != b.field()) throw RoleError("field mismatch");
    MatrixOperator m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    return m;
}

MatrixOperator materialize(const MatrixTensorElement& u) {
    if (u.terms.empty()) throw RoleError("empty tensor element");
    MatrixOperator m = kron(u.terms[0].x, u.terms[0].y).scaled(u.terms[0].coeff);
    for (std::size_t t = 1; t < u.terms.size(); ++t)
        m = m.axpy(1.0, kron(u.terms[t].x, u.terms[t].y).scaled(u.terms[t].coeff));
    return m;
}

namespace {

FiniteFunction combine_dual(const TensorElement& u, const DualVector& psi, bool apply_right) {
    // apply_right: v(psi) = sum c_i psi(y_i) x_i; else w(phi) = sum c_i phi(x_i) y_i
    const FiniteFunction& proto = apply_right ? u.terms[0].x : u.terms[0].y;
    std::vector<Cx> acc(proto.size(), Cx(0.0));
    for (const auto& t : u.terms) {
        Cx c = t.coeff * (apply_right ? dual_apply(psi, t.y) : dual_apply(psi, t.x));
        const FiniteFunction& e = apply_right ? t.x : t.y;
        for (std::size_t i = 0; i < e.size(); ++i) acc[i] += c * e[i];
    }
    if (proto.role() == FiniteFunction::Role::Sup)
        return FiniteFunction::sup(Field::Complex, std::move(acc));
    return FiniteFunction::lp(Field::Complex, std::move(acc), proto.p(), proto.weights());
}

FiniteFunction random_element_like(const FiniteFunction& proto, std::mt19937_64& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<Cx> v(proto.size());
    for (Cx& z : v)
        z = Cx(dist(gen), proto.field() == Field::Complex ? dist(gen) : 0.0);
    if (proto.role() == FiniteFunction::Role::Sup)
        return FiniteFunction::sup(proto.field(), std::move(v));
    return FiniteFunction::lp(proto.field(), std::move(v), proto.p(), proto.weights());
}

}  // namespace

namespace {

// Rewrites the term list through the SVD of the coefficient matrix
// M = sum c_i x_i y_i^T. Exact as an element of the tensor product, and the
// rank-revealing form makes the crude upper bound tight under cancellation.
TensorElement canonicalize(const TensorElement& u) {
    const FiniteFunction& px = u.terms[0].x;
    const FiniteFunction& py = u.terms[0].y;
    const std::size_t n1 = px.size(), n2 = py.size();
    MatrixOperator m(Field::Complex, n1, n2);
    double scale = 0.0;
    for (const auto& t : u.terms) {
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) m.at(i, j) += t.coeff * t.x[i] * t.y[j];
        scale += std::abs(t.coeff) * t.x.norm() * t.y.norm();
    }
    TensorElement out;
    out.kind = u.kind;
    if (m.is_zero(0.0)) return out;
    auto rebuild = [](const FiniteFunction& proto, std::vector<Cx> vals) {
        if (proto.role() == FiniteFunction::Role::Sup)
            return FiniteFunction::sup(Field::Complex, std::move(vals));
        return FiniteFunction::lp(Field::Complex, std::move(vals), proto.p(), proto.weights());
    };
    for (const auto& t : linalg::singular_triplets(m)) {
        if (t.sigma <= 1e-14 * std::max(scale, 1.0)) continue;
        std::vector<Cx> yv = t.v;
        for (Cx& z : yv) z = std::conj(z);  // M = sum sigma u (conj v)^T as a bilinear sum
        out.terms.push_back({Cx(t.sigma), rebuild(px, t.u), rebuild(py, std::move(yv))});
    }
    return out;
}

}  // namespace

NormBounds injective_norm_estimate(const TensorElement& u, int restarts, std::uint64_t seed) {
    if (u.terms.empty()) throw RoleError("empty tensor element");
    const auto xrole = u.terms[0].x.role();
    const auto yrole = u.terms[0].y.role();

    if (xrole == FiniteFunction::Role::Sup && yrole == FiniteFunction::Role::Sup) {
        double v = ck_identify(u).norm();
        return {v, v, true};
    }

    const TensorElement canon = canonicalize(u);
    NormBounds nb;
    for (const auto& t : canon.terms)
        nb.upper += std::abs(t.coeff) * t.x.norm() * t.y.norm();
    if (canon.terms.empty()) {
        nb.exact = true;
        return nb;
    }

    // Alternating maximization over the dual unit balls. Each half-step
    // replaces one functional by the norming functional of the partial
    // contraction, so the objective never decreases.
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 gen(derive_seed(seed, static_cast<std::uint64_t>(r)));
        FiniteFunction start = random_element_like(canon.terms[0].y, gen);
        if (start.is_zero()) continue;
        DualVector psi = norming_functional(start);
        double obj = 0.0;
        for (int it = 0; it < 200; ++it) {
            FiniteFunction v = combine_dual(canon, psi, true);
            if (v.is_zero()) break;
            double nv = v.norm();
            DualVector phi = norming_functional(v);
            FiniteFunction w = combine_dual(canon, phi, false);
            if (w.is_zero()) break;
            double nw = w.norm();
            if (nw + 1e-9 * (nb.upper + 1.0) < obj)
                throw Error("alternating maximization lost monotonicity");
            psi = norming_functional(w);
            double gain = nw - obj;
            obj = std::max({obj, nv, nw});
            if (gain <= 1e-13 * (nb.upper + 1.0)) break;
        }
        nb.lower = std::max(nb.lower, obj);
    }
    nb.lower = std::min(nb.lower, nb.upper);
    return nb;
}

namespace {

TensorElement pencil_combine(const TensorElement& u1, const TensorElement& u2, Cx mu) {
    TensorElement u = u1;
    for (const auto& t : u2.terms) {
        TensorTerm s = t;
        s.coeff *= mu;
        u.terms.push_back(std::move(s));
    }
    return u;
}

}  // namespace

Verdict pencil_min(const TensorElement& u1, const TensorElement& u2, Tolerances tol,
                   std::uint64_t seed) {
    if (u1.terms.empty() || u2.terms.empty()) throw RoleError("empty tensor element");
    if (u1.kind != u2.kind) throw RoleError("tensor norm kind mismatch");
    if (u1.field() != u2.field()) throw RoleError("tensor field mismatch");
    if (u1.is_zero()) throw DegenerateZero("pencil_min with u1 = 0");

    switch (u1.kind) {
        case NormKind::InjectiveExact:
            return bj_generic(ck_identify(u1), ck_identify(u2), tol);
        case NormKind::DeltaP:
            return bj_generic(lp_identify(u1), lp_identify(u2), tol);
        case NormKind::MinSpectral:
            throw RoleError("use the MatrixTensorElement overload for min-spectral tensors");
        case NormKind::InjectiveEstimated:
            break;
    }

    const int restarts = 16;
    NormBounds n1 = injective_norm_estimate(u1, restarts, seed);
    Verdict v;
    v.tolerances_used["tol_eq"] = tol.tol_eq;
    v.tolerances_used["tol_decision"] = tol.tol_decision;
    if (u2.is_zero()) {
        v.decision = Decision::Orthogonal;
        v.margin = 0.0;
        v.certificate = ArgminCertificate{Cx(0.0), n1.lower};
        return v;
    }
    NormBounds n2 = injective_norm_estimate(u2, restarts, seed + 1);
    const double radius = 2.0 * n1.upper / std::max(n2.lower, 1e-12);
    auto lower_at = [&](Cx mu) {
        return injective_norm_estimate(pencil_combine(u1, u2, mu), 4, seed + 2).lower;
    };
    PencilMinimum m = minimize_convex_pencil(lower_at, u1.field(), radius);
    double upper_at_min = injective_norm_estimate(pencil_combine(u1, u2, m.alpha), restarts,
                                                  seed + 3)
                              .upper;
    v.certificate = ArgminCertificate{m.alpha, m.value};
    v.margin = m.value - n1.upper;
    if (m.value >= n1.upper - tol.tol_decision) {
        v.decision = Decision::Orthogonal;
    } else if (upper_at_min < n1.lower - tol.tol_decision) {
        v.decision = Decision::NotOrthogonal;
        v.margin = upper_at_min - n1.lower;
    } else {
        v.decision = Decision::Inconclusive;
    }
    return v;
}

Verdict pencil_min(const MatrixTensorElement& u1, const MatrixTensorElement& u2, Tolerances tol) {
    if (u1.terms.empty() || u2.terms.empty()) throw RoleError("empty tensor element");
    if (u1.is_zero()) throw DegenerateZero("pencil_min with u1 = 0");
    MatrixOperator m1 = materialize(u1);
    MatrixOperator m2 = materialize(u2);
    return bj_generic(m1, m2, tol);
}

}  // namespace bjo
