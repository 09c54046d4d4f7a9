#include "bjo/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace bjo {

namespace {

void check_real(Field field, const std::vector<Cx>& values) {
    if (field != Field::Real) return;
    for (const Cx& v : values)
        if (v.imag() != 0.0) throw Error("real-field element with nonzero imaginary part");
}

}  // namespace

FiniteFunction FiniteFunction::sup(Field field, std::vector<Cx> values) {
    if (values.empty()) throw Error("FiniteFunction needs at least one point");
    check_real(field, values);
    FiniteFunction f;
    f.field_ = field;
    f.role_ = Role::Sup;
    f.values_ = std::move(values);
    return f;
}

FiniteFunction FiniteFunction::lp(Field field, std::vector<Cx> values, double p,
                                  std::vector<double> weights) {
    if (values.empty()) throw Error("FiniteFunction needs at least one point");
    if (!(p > 1.0)) throw BadExponent();
    check_real(field, values);
    if (weights.empty()) weights.assign(values.size(), 1.0);
    if (weights.size() != values.size()) throw ShapeError("weights length mismatch");
    for (double w : weights)
        if (!(w > 0.0)) throw Error("weights must be strictly positive");
    FiniteFunction f;
    f.field_ = field;
    f.role_ = Role::P;
    f.p_ = p;
    f.values_ = std::move(values);
    f.weights_ = std::move(weights);
    return f;
}

double FiniteFunction::norm() const {
    if (role_ == Role::Sup) {
        double m = 0.0;
        for (const Cx& v : values_) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        s += weights_[i] * std::pow(std::abs(values_[i]), p_);
    return std::pow(s, 1.0 / p_);
}

bool FiniteFunction::is_zero(double tol) const {
    for (const Cx& v : values_)
        if (std::abs(v) > tol) return false;
    return true;
}

FiniteFunction FiniteFunction::axpy(Cx alpha, const FiniteFunction& y) const {
    if (y.role_ != role_ || y.values_.size() != values_.size())
        throw RoleError("axpy between different spaces");
    FiniteFunction r = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] += alpha * y.values_[i];
    return r;
}

FiniteFunction FiniteFunction::scaled(Cx c) const {
    FiniteFunction r = *this;
    for (Cx& v : r.values_) v *= c;
    return r;
}

MatrixOperator::MatrixOperator(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), a_(rows * cols, Cx(0.0)) {
    if (rows == 0 || cols == 0) throw ShapeError("empty matrix");
}

MatrixOperator MatrixOperator::from_rows(Field field, const std::vector<std::vector<Cx>>& rows) {
    if (rows.empty() || rows[0].empty()) throw ShapeError("empty matrix");
    MatrixOperator m(field, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw ShapeError("ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) {
            if (field == Field::Real && rows[i][j].imag() != 0.0)
                throw Error("real-field matrix with nonzero imaginary part");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

MatrixOperator MatrixOperator::identity(Field field, std::size_t n) {
    MatrixOperator m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

MatrixOperator MatrixOperator::axpy(Cx alpha, const MatrixOperator& y) const {
    if (y.rows_ != rows_ || y.cols_ != cols_) throw ShapeError();
    MatrixOperator r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += alpha * y.a_[k];
    return r;
}

MatrixOperator MatrixOperator::scaled(Cx c) const {
    MatrixOperator r = *this;
    for (Cx& v : r.a_) v *= c;
    return r;
}

MatrixOperator MatrixOperator::adjoint() const {
    MatrixOperator r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

std::vector<Cx> MatrixOperator::apply(const std::vector<Cx>& v) const {
    if (v.size() != cols_) throw ShapeError();
    std::vector<Cx> r(rows_, Cx(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Cx s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

std::vector<Cx> MatrixOperator::apply_adjoint(const std::vector<Cx>& v) const {
    if (v.size() != rows_) throw ShapeError();
    std::vector<Cx> r(cols_, Cx(0.0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[j] += std::conj(at(i, j)) * v[i];
    return r;
}

bool MatrixOperator::is_zero(double tol) const {
    for (const Cx& v : a_)
        if (std::abs(v) > tol) return false;
    return true;
}

double MatrixOperator::spectral_norm(std::uint64_t seed) const {
    // Power iteration on B = A^H A. Two restarts, keep the best.
    const std::size_t n = cols_;
    double frob = 0.0;
    for (const Cx& v : a_) frob += abs2(v);
    if (frob == 0.0) return 0.0;
    frob = std::sqrt(frob);

    double best = 0.0;
    std::vector<std::vector<Cx>> ritz;
    for (int restart = 0; restart < 2; ++restart) {
        std::mt19937_64 gen(derive_seed(seed + 0x5eed, restart));
        std::normal_distribution<double> dist(0.0, 1.0);
        std::vector<Cx> v(n);
        for (Cx& z : v) z = Cx(dist(gen), field_ == Field::Complex ? dist(gen) : 0.0);
        double nv = linalg::norm2(v);
        for (Cx& z : v) z /= nv;

        double lambda = 0.0;
        int stall = 0;
        for (int it = 0; it < 5000; ++it) {
            std::vector<Cx> w = apply_adjoint(apply(v));  // B v
            double lam = std::real(linalg::inner(w, v));  // Rayleigh quotient
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += abs2(w[i] - lam * v[i]);
            res = std::sqrt(res);
            double nw = linalg::norm2(w);
            if (nw == 0.0) { lambda = 0.0; break; }
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
            // a stalled Rayleigh quotient means the iterate is pinned inside
            // a (near-)degenerate top subspace; the Ritz step below resolves
            // the extreme eigenvalue from there
            stall = std::abs(lam - lambda) <= 1e-13 * std::max(lam, frob * frob) ? stall + 1 : 0;
            lambda = lam;
            if (res <= 1e-12 * frob * frob || stall >= 2) break;
        }
        best = std::max(best, lambda);
        ritz.push_back(std::move(v));
    }

    // Rayleigh-Ritz over the span of the two iterates. When the top two
    // eigenvalues of B nearly tie, plain power iteration stalls inside the
    // top subspace; the 2x2 Ritz problem still resolves the extreme value.
    if (ritz.size() == 2) {
        std::vector<Cx>& v1 = ritz[0];
        std::vector<Cx> v2 = ritz[1];
        Cx overlap = linalg::inner(v2, v1);  // v1^H v2
        for (std::size_t i = 0; i < n; ++i) v2[i] -= overlap * v1[i];
        double nv2 = linalg::norm2(v2);
        if (nv2 > 1e-8) {
            for (Cx& z : v2) z /= nv2;
            std::vector<Cx> b1 = apply_adjoint(apply(v1));
            std::vector<Cx> b2 = apply_adjoint(apply(v2));
            double h11 = std::real(linalg::inner(b1, v1));
            double h22 = std::real(linalg::inner(b2, v2));
            Cx h12 = linalg::inner(b2, v1);  // v1^H B v2
            double mean = 0.5 * (h11 + h22);
            double disc = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + abs2(h12));
            best = std::max(best, mean + disc);
        }
    }
    return std::sqrt(std::max(best, 0.0));
}

NormAttainmentSet norm_attainment_set(const FiniteFunction& f, double rel_tol) {
    if (f.is_zero()) throw DegenerateZero("norm_attainment_set of zero function");
    const double nf = f.norm();
    NormAttainmentSet s;
    s.rel_tol = rel_tol;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::abs(f[i]) >= (1.0 - rel_tol) * nf) s.indices.push_back(i);
    return s;
}

Cx dual_apply(const DualVector& phi, const FiniteFunction& x) {
    if (phi.coeffs.size() != x.size()) throw ShapeError();
    Cx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += phi.coeffs[i] * x[i];
    return s;
}

double dual_norm(const DualVector& phi, const FiniteFunction& space_of) {
    if (phi.coeffs.size() != space_of.size()) throw ShapeError();
    if (space_of.role() == FiniteFunction::Role::Sup) {
        double s = 0.0;  // ell^1
        for (const Cx& c : phi.coeffs) s += std::abs(c);
        return s;
    }
    // phi(x) = sum a_i x_i on weighted ell^p: dual norm (sum w_i^{1-q} |a_i|^q)^{1/q}.
    const double p = space_of.p();
    const double q = p / (p - 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < phi.coeffs.size(); ++i)
        s += std::pow(space_of.weights()[i], 1.0 - q) * std::pow(std::abs(phi.coeffs[i]), q);
    return std::pow(s, 1.0 / q);
}

DualVector norming_functional(const FiniteFunction& x) {
    if (x.is_zero()) throw DegenerateZero("norming_functional of zero element");
    DualVector phi;
    phi.field = x.field();
    phi.coeffs.assign(x.size(), Cx(0.0));
    if (x.role() == FiniteFunction::Role::Sup) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < x.size(); ++i)
            if (std::abs(x[i]) > std::abs(x[best])) best = i;
        phi.coeffs[best] = std::conj(x[best]) / std::abs(x[best]);
        return phi;
    }
    const double p = x.p();
    const double nx = x.norm();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double av = std::abs(x[i]);
        if (av == 0.0) continue;
        phi.coeffs[i] = x.weights()[i] * std::conj(x[i]) * std::pow(av, p - 2.0) /
                        std::pow(nx, p - 1.0);
    }
    return phi;
}

Cx matrix_dual_apply(const MatrixFunctional& phi, const MatrixOperator& m) {
    std::vector<Cx> mv = m.apply(phi.v);
    return linalg::inner(mv, phi.u);  // u^H (M v)
}

MatrixFunctional norming_functional(const MatrixOperator& a) {
    if (a.is_zero()) throw DegenerateZero("norming_functional of zero matrix");
    auto trips = linalg::singular_triplets(a);
    MatrixFunctional phi;
    phi.u = trips[0].u;
    phi.v = trips[0].v;
    return phi;
}

namespace linalg {

Cx inner(const std::vector<Cx>& x, const std::vector<Cx>& y) {
    Cx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

double norm2(const std::vector<Cx>& x) {
    double s = 0.0;
    for (const Cx& v : x) s += abs2(v);
    return std::sqrt(s);
}

EigenSystem hermitian_eig(const std::vector<Cx>& h, std::size_t n) {
    std::vector<Cx> a = h;
    std::vector<Cx> vmat(n * n, Cx(0.0));  // accumulated rotations, row-major
    for (std::size_t i = 0; i < n; ++i) vmat[i * n + i] = 1.0;

    auto off = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += abs2(a[p * n + q]);
        return std::sqrt(2.0 * s);
    };
    double scale = 0.0;
    for (const Cx& v : a) scale += abs2(v);
    scale = std::sqrt(scale);
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 60 && off() > 1e-14 * scale; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Cx apq = a[p * n + q];
                if (std::abs(apq) <= 1e-300) continue;
                double app = a[p * n + p].real();
                double aqq = a[q * n + q].real();
                // Unitary 2x2 rotation annihilating the (p,q) entry.
                Cx phase = apq / std::abs(apq);
                double theta = 0.5 * std::atan2(2.0 * std::abs(apq), app - aqq);
                double c = std::cos(theta), s = std::sin(theta);
                Cx sp = s * phase;
                for (std::size_t k = 0; k < n; ++k) {
                    Cx akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp + std::conj(sp) * akq;
                    a[k * n + q] = -sp * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Cx apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk + sp * aqk;
                    a[q * n + k] = -std::conj(sp) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Cx vkp = vmat[k * n + p], vkq = vmat[k * n + q];
                    vmat[k * n + p] = c * vkp + std::conj(sp) * vkq;
                    vmat[k * n + q] = -sp * vkp + c * vkq;
                }
            }
        }
    }

    EigenSystem es;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i * n + i].real() > a[j * n + j].real(); });
    for (std::size_t k : order) {
        es.eigenvalues.push_back(a[k * n + k].real());
        std::vector<Cx> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = vmat[i * n + k];
        es.vectors.push_back(std::move(col));
    }
    return es;
}

std::vector<SingularTriplet> singular_triplets(const MatrixOperator& a) {
    const std::size_t n = a.cols();
    std::vector<Cx> b(n * n, Cx(0.0));  // A^H A
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Cx s = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(a.at(k, i)) * a.at(k, j);
            b[i * n + j] = s;
        }
    EigenSystem es = hermitian_eig(b, n);
    std::vector<SingularTriplet> out;
    for (std::size_t k = 0; k < n; ++k) {
        SingularTriplet t;
        t.sigma = std::sqrt(std::max(es.eigenvalues[k], 0.0));
        t.v = es.vectors[k];
        if (t.sigma > 0.0) {
            t.u = a.apply(t.v);
            double nu = norm2(t.u);
            if (nu > 0.0)
                for (Cx& z : t.u) z /= nu;
        } else {
            t.u.assign(a.rows(), Cx(0.0));
        }
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

// Householder reduction of a real symmetric matrix (row-major, m x m) to
// tridiagonal form, eigenvalues only: diagonal in d, subdiagonal in e[1..m-1].
void sym_tridiag(std::vector<double>& a, std::size_t m, std::vector<double>& d,
                 std::vector<double>& e) {
    d.assign(m, 0.0);
    e.assign(m, 0.0);
    for (std::size_t i = m - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a[i * m + k]);
            if (scale == 0.0) {
                e[i] = a[i * m + l];
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a[i * m + k] /= scale;
                    h += a[i * m + k] * a[i * m + k];
                }
                double f = a[i * m + l];
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[i * m + l] = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a[j * m + k] * a[i * m + k];
                    for (std::size_t k = j + 1; k <= l; ++k) g += a[k * m + j] * a[i * m + k];
                    e[j] = g / h;
                    f += e[j] * a[i * m + j];
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a[i * m + j];
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k)
                        a[j * m + k] -= f * e[k] + g * a[i * m + k];
                }
            }
        } else {
            e[i] = a[i * m + l];
        }
    }
    for (std::size_t i = 0; i < m; ++i) d[i] = a[i * m + i];
}

// Implicit-shift QL on a symmetric tridiagonal matrix, eigenvalues only.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e) {
    const std::size_t m = d.size();
    for (std::size_t i = 1; i < m; ++i) e[i - 1] = e[i];
    e[m - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < m; ++l) {
        int iter = 0;
        std::size_t k;
        do {
            for (k = l; k + 1 < m; ++k) {
                double dd = std::abs(d[k]) + std::abs(d[k + 1]);
                if (std::abs(e[k]) <= eps * dd) break;
            }
            if (k != l) {
                if (iter++ == 60) break;  // d[l] is converged to working accuracy
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[k] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = k; i-- > l;) {
                    double f = s * e[i], b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[k] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[k] = 0.0;
            }
        } while (k != l);
    }
}

}  // namespace

double hermitian_top_eigenvalue(const std::vector<Cx>& h, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return h[0].real();
    // Real symmetric embedding [[X, -Y], [Y, X]] of H = X + iY; each
    // eigenvalue of H appears twice.
    const std::size_t m = 2 * n;
    std::vector<double> a(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double x = h[i * n + j].real(), y = h[i * n + j].imag();
            a[i * m + j] = x;
            a[i * m + (n + j)] = -y;
            a[(n + i) * m + j] = y;
            a[(n + i) * m + (n + j)] = x;
        }
    std::vector<double> d, e;
    sym_tridiag(a, m, d, e);
    tridiag_ql(d, e);
    return *std::max_element(d.begin(), d.end());
}

}  // namespace linalg

}  // namespace bjo
