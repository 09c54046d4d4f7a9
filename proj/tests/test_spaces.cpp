#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bjo/spaces.hpp"

using namespace bjo;

TEST_CASE("sup norm and attainment set") {
    FiniteFunction f = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(1, 2), Cx(1, -2)});
    CHECK(f.norm() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    auto m = norm_attainment_set(f, 1e-9);
    REQUIRE(m.indices.size() == 2);
    CHECK(m.indices[0] == 1);
    CHECK(m.indices[1] == 2);

    FiniteFunction z = FiniteFunction::sup(Field::Real, {Cx(0.0), Cx(0.0)});
    CHECK(z.norm() == 0.0);
    CHECK(z.is_zero());
    CHECK_THROWS_AS(norm_attainment_set(z, 1e-9), DegenerateZero);
}

TEST_CASE("weighted lp norm matches a fixed external value") {
    // values [1,-2,3], weights [0.5,1,2], p=3: (0.5 + 8 + 54)^(1/3)
    FiniteFunction f = FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(-2.0), Cx(3.0)}, 3.0,
                                          {0.5, 1.0, 2.0});
    CHECK(f.norm() == doctest::Approx(3.9685026299204984).epsilon(1e-14));

    // p=2 sanity
    FiniteFunction g2 = FiniteFunction::lp(Field::Real, {Cx(3.0), Cx(4.0)}, 2.0);
    CHECK(g2.norm() == doctest::Approx(5.0));
}

TEST_CASE("lp constructor rejects bad input") {
    CHECK_THROWS_AS(FiniteFunction::lp(Field::Real, {Cx(1.0)}, 0.5), BadExponent);
    CHECK_THROWS_AS(FiniteFunction::lp(Field::Real, {Cx(1.0)}, 1.0), BadExponent);
    CHECK_THROWS_AS(FiniteFunction::lp(Field::Real, {Cx(1.0)}, 2.0, {0.0}), Error);
    CHECK_THROWS_AS(FiniteFunction::lp(Field::Real, {Cx(1.0)}, 2.0, {1.0, 1.0}), ShapeError);
    CHECK_THROWS_AS(FiniteFunction::sup(Field::Real, {Cx(0.0, 1.0)}), Error);
}

TEST_CASE("axpy and scaling") {
    FiniteFunction x = FiniteFunction::sup(Field::Complex, {Cx(1, 0), Cx(0, 1)});
    FiniteFunction y = FiniteFunction::sup(Field::Complex, {Cx(0, 1), Cx(1, 0)});
    FiniteFunction s = x.axpy(Cx(0, 1), y);
    CHECK(s[0] == Cx(1, 0) + Cx(0, 1) * Cx(0, 1));
    CHECK(x.scaled(2.0).norm() == doctest::Approx(2.0 * x.norm()));
}

TEST_CASE("norming functional norms its element") {
    FiniteFunction f = FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(-2.0), Cx(3.0)}, 3.0,
                                          {0.5, 1.0, 2.0});
    DualVector phi = norming_functional(f);
    CHECK(std::abs(dual_apply(phi, f) - Cx(f.norm())) < 1e-12 * f.norm());
    CHECK(dual_norm(phi, f) == doctest::Approx(1.0).epsilon(1e-10));

    FiniteFunction g = FiniteFunction::sup(Field::Complex, {Cx(1, 2), Cx(0, -3)});
    DualVector psi = norming_functional(g);
    CHECK(std::abs(dual_apply(psi, g) - Cx(g.norm())) < 1e-12 * g.norm());
    CHECK(dual_norm(psi, g) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dual norm matches the conjugate-exponent formula") {
    // fixed external value for phi=[0.25,-1,0.5] on weighted l^3
    FiniteFunction space = FiniteFunction::lp(Field::Real, {Cx(1.0), Cx(1.0), Cx(1.0)}, 3.0,
                                              {0.5, 1.0, 2.0});
    DualVector phi{Field::Real, {Cx(0.25), Cx(-1.0), Cx(0.5)}};
    CHECK(dual_norm(phi, space) == doctest::Approx(1.2673716983972407).epsilon(1e-12));
}

TEST_CASE("spectral norm: golden ratio matrix") {
    MatrixOperator a =
        MatrixOperator::from_rows(Field::Real, {{Cx(1.0), Cx(1.0)}, {Cx(1.0), Cx(0.0)}});
    CHECK(a.spectral_norm() == doctest::Approx(1.618033988749895).epsilon(1e-12));
}

TEST_CASE("spectral norm: complex rectangular, against fixed values") {
    MatrixOperator b = MatrixOperator::from_rows(
        Field::Complex,
        {{Cx(1, 2), Cx(0.5, -1)}, {Cx(0, 3), Cx(-2, 0)}, {Cx(0.25, 0), Cx(1, 1)}});
    CHECK(b.spectral_norm() == doctest::Approx(4.0304355366771265).epsilon(1e-10));
    auto trips = linalg::singular_triplets(b);
    REQUIRE(trips.size() == 2);
    CHECK(trips[0].sigma == doctest::Approx(4.0304355366771265).epsilon(1e-10));
    CHECK(trips[1].sigma == doctest::Approx(2.25124174).epsilon(1e-7));
    // triplet consistency: A v = sigma u
    for (const auto& t : trips) {
        std::vector<Cx> av = b.apply(t.v);
        for (std::size_t i = 0; i < av.size(); ++i)
            CHECK(std::abs(av[i] - t.sigma * t.u[i]) < 1e-9);
    }
}

TEST_CASE("spectral norm agrees with Jacobi route on degenerate spectra") {
    // diag(1/2, -1/2, 0): tied singular values, the hard case for power
    // iteration alone
    MatrixOperator d(Field::Complex, 3, 3);
    d.at(0, 0) = 0.5;
    d.at(1, 1) = -0.5;
    CHECK(d.spectral_norm() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(linalg::singular_triplets(d)[0].sigma == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tridiagonal top-eigenvalue route agrees with the Jacobi oracle") {
    // closed form: [[2, 1-i],[1+i, 3]] has eigenvalues 4 and 1
    CHECK(linalg::hermitian_top_eigenvalue({Cx(2, 0), Cx(1, -1), Cx(1, 1), Cx(3, 0)}, 2) ==
          doctest::Approx(4.0).epsilon(1e-13));
    // identity: fully degenerate spectrum
    std::vector<Cx> id(25, Cx(0.0));
    for (std::size_t i = 0; i < 5; ++i) id[i * 5 + i] = 1.0;
    CHECK(linalg::hermitian_top_eigenvalue(id, 5) == doctest::Approx(1.0).epsilon(1e-14));
    // random Hermitian PSD matrices against the Jacobi eigensolver
    std::mt19937_64 gen(17);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 6;
        MatrixOperator a(Field::Complex, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Cx(dist(gen), dist(gen));
        std::vector<Cx> b(n * n, Cx(0.0));  // A^H A
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    b[i * n + j] += std::conj(a.at(k, i)) * a.at(k, j);
        const double want = linalg::hermitian_eig(b, n).eigenvalues[0];
        CHECK(linalg::hermitian_top_eigenvalue(b, n) ==
              doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("hermitian eigensolver: closed-form 2x2") {
    // [[2, 1-i],[1+i, 3]]: trace 5, det 4 -> eigenvalues 4, 1
    auto es = linalg::hermitian_eig({Cx(2, 0), Cx(1, -1), Cx(1, 1), Cx(3, 0)}, 2);
    REQUIRE(es.eigenvalues.size() == 2);
    CHECK(es.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(es.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    // residual check H v = lambda v
    std::vector<Cx> h = {Cx(2, 0), Cx(1, -1), Cx(1, 1), Cx(3, 0)};
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t i = 0; i < 2; ++i) {
            Cx hv = h[i * 2] * es.vectors[k][0] + h[i * 2 + 1] * es.vectors[k][1];
            CHECK(std::abs(hv - es.eigenvalues[k] * es.vectors[k][i]) < 1e-10);
        }
    }
}

TEST_CASE("matrix norming functional") {
    MatrixOperator a =
        MatrixOperator::from_rows(Field::Real, {{Cx(1.0), Cx(1.0)}, {Cx(1.0), Cx(0.0)}});
    MatrixFunctional phi = norming_functional(a);
    CHECK(std::abs(matrix_dual_apply(phi, a)) ==
          doctest::Approx(a.spectral_norm()).epsilon(1e-9));
    CHECK(linalg::norm2(phi.u) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(linalg::norm2(phi.v) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("matrix shape errors") {
    MatrixOperator a(Field::Real, 2, 3);
    MatrixOperator b(Field::Real, 2, 2);
    CHECK_THROWS_AS(a.axpy(1.0, b), ShapeError);
    CHECK_THROWS_AS(a.apply(std::vector<Cx>(2)), ShapeError);
}
