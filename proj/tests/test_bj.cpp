#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bjo/bj.hpp"

using namespace bjo;

namespace {

const ArgminCertificate* argmin_of(const Verdict& v) {
    return std::get_if<ArgminCertificate>(&v.certificate);
}

}  // namespace

TEST_CASE("pencil minimization: weighted l2, closed form") {
    // x=[1,2,-1], y=[0.5,-1,2], w=[1,0.5,2]: argmin = -<x,y>/<y,y> = 0.5142857...
    FiniteFunction x =
        FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(2.0), Cx(-1.0)}, 2.0, {1.0, 0.5, 2.0});
    FiniteFunction y =
        FiniteFunction::lp(Field::Real, {Cx(0.5), Cx(-1.0), Cx(2.0)}, 2.0, {1.0, 0.5, 2.0});
    PencilMinimum m = minimize_convex_pencil([&](Cx a) { return x.axpy(a, y).norm(); },
                                             Field::Real, 2.0 * x.norm() / y.norm());
    CHECK(m.alpha.real() == doctest::Approx(0.5142857142857142).epsilon(1e-7));
    CHECK(m.value == doctest::Approx(1.6388149028228558).epsilon(1e-9));
}

TEST_CASE("pencil minimization: real sup, kink minimum") {
    // x=[3,-2,1], y=[1,2,-1]: min at -1/3, value 8/3 (external oracle)
    FiniteFunction x = FiniteFunction::sup(Field::Real, {Cx(3.0), Cx(-2.0), Cx(1.0)});
    FiniteFunction y = FiniteFunction::sup(Field::Real, {Cx(1.0), Cx(2.0), Cx(-1.0)});
    PencilMinimum m = minimize_convex_pencil([&](Cx a) { return x.axpy(a, y).norm(); },
                                             Field::Real, 2.0 * x.norm() / y.norm());
    CHECK(m.alpha.real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-7));
    CHECK(m.value == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("pencil minimization: complex sup plane") {
    // x=[1,i], y=[1,1]: minimum sqrt(2)/2 at alpha = -1/2 - i/2 (external oracle)
    FiniteFunction x = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(0, 1)});
    FiniteFunction y = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(1, 0)});
    PencilMinimum m = minimize_convex_pencil([&](Cx a) { return x.axpy(a, y).norm(); },
                                             Field::Complex, 2.0 * x.norm() / y.norm());
    CHECK(m.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
    CHECK(m.alpha.real() == doctest::Approx(-0.5).epsilon(1e-5));
    CHECK(m.alpha.imag() == doctest::Approx(-0.5).epsilon(1e-5));
}

TEST_CASE("bj_generic: y = 0 is orthogonal with alpha* = 0") {
    FiniteFunction x = FiniteFunction::sup(Field::Real, {Cx(1.0), Cx(2.0)});
    FiniteFunction z = FiniteFunction::sup(Field::Real, {Cx(0.0), Cx(0.0)});
    Verdict v = bj_generic(x, z);
    CHECK(v.decision == Decision::Orthogonal);
    REQUIRE(argmin_of(v) != nullptr);
    CHECK(argmin_of(v)->alpha_star == Cx(0.0));
    CHECK(validate_verdict(x, z, v).ok);
}

TEST_CASE("bj_generic throws on x = 0") {
    FiniteFunction z = FiniteFunction::sup(Field::Real, {Cx(0.0)});
    CHECK_THROWS_AS(bj_generic(z, z), DegenerateZero);
}

TEST_CASE("complex C(K) criterion: hull straddle") {
    // f=[1,1] attains everywhere; products conj(f)g = [1, -1]: hull contains 0
    FiniteFunction f = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(1, 0)});
    FiniteFunction g = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(-1, 0)});
    Verdict v = bj_ck_complex(f, g);
    CHECK(v.decision == Decision::Orthogonal);
    CHECK(validate_verdict(f, g, v).ok);

    // same-side products: not orthogonal
    FiniteFunction h = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(0.5, 0)});
    Verdict w = bj_ck_complex(f, h);
    CHECK(w.decision == Decision::NotOrthogonal);
    CHECK(w.margin < 0.0);
    CHECK(validate_verdict(f, h, w).ok);
}

TEST_CASE("complex criterion agrees with the definition on 120-degree hulls") {
    FiniteFunction f = FiniteFunction::sup(
        Field::Complex, {Cx(2, 0), std::polar(2.0, 2.0943951023931953),
                         std::polar(2.0, -2.0943951023931953)});
    // g with products along the three cube roots of unity
    std::vector<Cx> gv(3);
    for (int k = 0; k < 3; ++k)
        gv[k] = std::polar(1.0, 2.0 * 3.14159265358979323846 * k / 3.0) / std::conj(f[k]);
    FiniteFunction g = FiniteFunction::sup(Field::Complex, gv);
    Verdict v = bj_ck_complex(f, g);
    Verdict o = bj_generic(f, g);
    CHECK(v.decision == Decision::Orthogonal);
    CHECK(o.decision == Decision::Orthogonal);
    const auto* hc = std::get_if<HullCertificate>(&v.certificate);
    REQUIRE(hc != nullptr);
    CHECK(validate_verdict(f, g, v).ok);
}

TEST_CASE("real C(K) criterion: sign straddle on the attainment set") {
    FiniteFunction f = FiniteFunction::sup(Field::Real, {Cx(2.0), Cx(-2.0), Cx(1.0)});
    FiniteFunction g = FiniteFunction::sup(Field::Real, {Cx(1.0), Cx(1.0), Cx(5.0)});
    // products on M_f = {0,1}: 2*1 = 2 and (-2)*1 = -2: straddle
    Verdict v = bj_ck_real(f, g);
    CHECK(v.decision == Decision::Orthogonal);
    const auto* pc = std::get_if<PointCertificate>(&v.certificate);
    REQUIRE(pc != nullptr);
    CHECK(pc->indices.size() == 2);
    CHECK(validate_verdict(f, g, v).ok);
    CHECK(bj_generic(f, g).decision == Decision::Orthogonal);

    FiniteFunction g2 = FiniteFunction::sup(Field::Real, {Cx(1.0), Cx(-1.0), Cx(0.0)});
    Verdict w = bj_ck_real(f, g2);
    CHECK(w.decision == Decision::NotOrthogonal);
    CHECK(bj_generic(f, g2).decision == Decision::NotOrthogonal);
}

TEST_CASE("lp criterion: p = 2 reduces to the inner product") {
    FiniteFunction f = FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(2.0)}, 2.0);
    FiniteFunction g = FiniteFunction::lp(Field::Real, {Cx(-2.0), Cx(1.0)}, 2.0);
    Verdict v = bj_lp(f, g);
    CHECK(v.decision == Decision::Orthogonal);
    CHECK(validate_verdict(f, g, v).ok);
    CHECK(bj_generic(f, g).decision == Decision::Orthogonal);

    FiniteFunction h = FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(1.0)}, 2.0);
    CHECK(bj_lp(f, h).decision == Decision::NotOrthogonal);
}

TEST_CASE("lp criterion: weighted p = 3 hand value") {
    // w = [1,2], f = [1,-1]: d = w g |f|^2 sign f. Orthogonality needs
    // g1 = 2 g2; take g = [2,1].
    FiniteFunction f = FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(-1.0)}, 3.0, {1.0, 2.0});
    FiniteFunction g = FiniteFunction::lp(Field::Real, {Cx(2.0), Cx(1.0)}, 3.0, {1.0, 2.0});
    Verdict v = bj_lp(f, g);
    CHECK(v.decision == Decision::Orthogonal);
    CHECK(std::abs(v.margin) < 1e-12);
    CHECK(bj_generic(f, g).decision == Decision::Orthogonal);
}

TEST_CASE("lp criterion: span fallback keeps the definitional verdict") {
    FiniteFunction f = FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(2.0)}, 3.0);
    FiniteFunction g = FiniteFunction::lp(Field::Real, {Cx(-0.5), Cx(-1.0)}, 3.0);  // g = -f/2
    Verdict v = bj_lp(f, g);
    CHECK(v.decision == Decision::NotOrthogonal);  // f in span{g}: never orthogonal to itself
}

TEST_CASE("matrix criterion: Bhatia-Semrl witness") {
    MatrixOperator a =
        MatrixOperator::from_rows(Field::Complex, {{Cx(1), Cx(0)}, {Cx(0), Cx(2)}});
    MatrixOperator c =
        MatrixOperator::from_rows(Field::Complex, {{Cx(1), Cx(1)}, {Cx(1), Cx(0)}});
    Verdict v = bj_matrix(a, c);
    CHECK(v.decision == Decision::Orthogonal);
    const auto* wc = std::get_if<WitnessVectorCertificate>(&v.certificate);
    REQUIRE(wc != nullptr);
    // witness must be a top singular vector with <Ax, Cx> = 0
    std::vector<Cx> ax = a.apply(wc->x);
    CHECK(linalg::norm2(ax) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(linalg::inner(ax, c.apply(wc->x))) < 1e-9);
    CHECK(validate_verdict(a, c, v).ok);
}

TEST_CASE("matrix criterion: non-orthogonal pair carries a refutation") {
    MatrixOperator b =
        MatrixOperator::from_rows(Field::Complex, {{Cx(1), Cx(0)}, {Cx(0), Cx(0)}});
    MatrixOperator id = MatrixOperator::identity(Field::Complex, 2);
    Verdict v = bj_matrix(b, id);
    CHECK(v.decision == Decision::NotOrthogonal);
    REQUIRE(argmin_of(v) != nullptr);
    CHECK(argmin_of(v)->achieved_norm == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(validate_verdict(b, id, v).ok);
}

TEST_CASE("rank-one criterion") {
    std::vector<Cx> x = {Cx(1, 0), Cx(0, 1)};
    std::vector<Cx> y = {Cx(1, 0), Cx(1, 0)};
    std::vector<Cx> z = {Cx(0, 1), Cx(1, 0)};  // <x,z> = conj(i)*1 + conj(1)*i ... check below
    std::vector<Cx> w = {Cx(2, 0), Cx(0, 0)};
    // <x,z> = z^H x = conj(i)*1 + conj(1)*i = -i + i = 0: orthogonal
    Verdict v = bj_rank_one(x, y, z, w);
    CHECK(v.decision == Decision::Orthogonal);

    std::vector<Cx> z2 = {Cx(1, 0), Cx(0, 0)};
    std::vector<Cx> w2 = {Cx(1, 0), Cx(1, 0)};
    CHECK(bj_rank_one(x, y, z2, w2).decision == Decision::NotOrthogonal);
}

TEST_CASE("strong BJ in C(K)") {
    FiniteFunction f = FiniteFunction::sup(Field::Complex, {Cx(2, 0), Cx(1, 0), Cx(2, 0)});
    FiniteFunction g = FiniteFunction::sup(Field::Complex, {Cx(0, 0), Cx(5, 0), Cx(1, 0)});
    Verdict v = sbj_ck(f, g);  // g vanishes at index 0 of M_f = {0, 2}
    CHECK(v.decision == Decision::Orthogonal);
    const auto* pc = std::get_if<PointCertificate>(&v.certificate);
    REQUIRE(pc != nullptr);
    REQUIRE(pc->indices.size() == 1);
    CHECK(pc->indices[0] == 0);
    CHECK(validate_verdict(f, g, v).ok);

    // strong implies plain
    CHECK(bj_ck_complex(f, g).decision == Decision::Orthogonal);

    FiniteFunction g2 = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(0, 0), Cx(1, 0)});
    CHECK(sbj_ck(f, g2).decision == Decision::NotOrthogonal);
}

TEST_CASE("strong is strictly stronger than plain") {
    // plain holds by sign straddle, strong fails: no zero on M_f
    FiniteFunction f = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(-1, 0)});
    FiniteFunction g = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(1, 0)});
    CHECK(bj_ck_complex(f, g).decision == Decision::Orthogonal);
    CHECK(sbj_ck(f, g).decision == Decision::NotOrthogonal);
}

TEST_CASE("hull helpers") {
    std::vector<Cx> tri = {Cx(-10, 0), Cx(6, 8), Cx(6, -8)};
    CHECK(hull::origin_distance(tri) < 0.0);  // origin strictly inside
    auto comb = hull::origin_combination(tri, 1e-9);
    REQUIRE(!comb.weights.empty());
    Cx acc = 0.0;
    double ws = 0.0;
    for (std::size_t i = 0; i < comb.indices.size(); ++i) {
        acc += comb.weights[i] * tri[comb.indices[i]];
        ws += comb.weights[i];
    }
    CHECK(std::abs(acc) < 1e-9);
    CHECK(ws == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<Cx> off = {Cx(1, 0), Cx(2, 1), Cx(1, -1)};
    CHECK(hull::origin_distance(off) > 0.9);

    auto hullpts = hull::convex_hull({Cx(0, 0), Cx(1, 0), Cx(1, 1), Cx(0, 1), Cx(0.5, 0.5)});
    CHECK(hullpts.size() == 4);
}

TEST_CASE("validators reject corrupted certificates") {
    FiniteFunction f = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(1, 0)});
    FiniteFunction g = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(-1, 0)});
    Verdict v = bj_ck_complex(f, g);
    REQUIRE(v.decision == Decision::Orthogonal);

    Verdict bad = v;
    if (auto* hc = std::get_if<HullCertificate>(&bad.certificate)) {
        for (double& w : hc->weights) w *= 0.7;  // weights no longer sum to 1
        CHECK_FALSE(validate_verdict(f, g, bad).ok);
    }

    Verdict bad2 = v;
    bad2.certificate = ArgminCertificate{Cx(0.0), 0.123};  // wrong achieved norm
    CHECK_FALSE(validate_verdict(f, g, bad2).ok);

    MatrixOperator a =
        MatrixOperator::from_rows(Field::Complex, {{Cx(1), Cx(0)}, {Cx(0), Cx(2)}});
    MatrixOperator c =
        MatrixOperator::from_rows(Field::Complex, {{Cx(1), Cx(1)}, {Cx(1), Cx(0)}});
    Verdict vm = bj_matrix(a, c);
    Verdict badm = vm;
    badm.certificate = WitnessVectorCertificate{{Cx(1, 0), Cx(0, 0)}};  // not a top vector
    CHECK_FALSE(validate_verdict(a, c, badm).ok);
}

TEST_CASE("tolerances are recorded on the verdict") {
    FiniteFunction f = FiniteFunction::sup(Field::Real, {Cx(1.0), Cx(-1.0)});
    FiniteFunction g = FiniteFunction::sup(Field::Real, {Cx(1.0), Cx(1.0)});
    Verdict v = bj_ck_real(f, g);
    CHECK(v.tolerances_used.count("tol_eq") == 1);
    CHECK(v.tolerances_used.count("tol_decision") == 1);
}
