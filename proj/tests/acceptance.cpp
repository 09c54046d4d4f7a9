// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "bjo/verify.hpp"

using namespace bjo;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int id, const char* what, bool pass, double secs) {
    std::printf("%s criterion %2d: %s (%.2fs)\n", pass ? "PASS" : "FAIL", id, what, secs);
    if (!pass) ++g_failures;
}

bool fixtures_ok(const ExperimentReport& rep) {
    bool ok = rep.ok();
    if (!ok)
        for (const auto& f : rep.fixtures)
            if (!f.pass)
                std::printf("       %s: expected %s, observed %s\n", f.label.c_str(),
                            f.expected.c_str(), f.observed.c_str());
    return ok;
}

}  // namespace

int main() {
    // 1: triangle-example reproduction, < 1 s
    {
        Timer t;
        ExperimentReport rep = exp_example2();
        bool ok = fixtures_ok(rep);
        double s = t.seconds();
        report(1, "triangle example: norms, M sets, hull vertices, verdicts", ok && s < 1.0, s);
    }

    // 2: matrix-example reproduction, < 1 s
    {
        Timer t;
        RunOptions o;
        o.trials = 0;  // the reproduction is the deterministic fixtures
        ExperimentReport rep = exp_matrix_examples(o);
        bool ok = fixtures_ok(rep) && rep.failures == 0;
        double s = t.seconds();
        report(2, "matrix example: kron verdicts, witnesses, margins", ok && s < 1.0, s);
    }

    // 3: grid-example reproduction on the 101-point grid, < 1 s
    {
        Timer t;
        ExperimentReport rep = exp_example3();
        bool ok = fixtures_ok(rep);
        double s = t.seconds();
        report(3, "identity-vs-one grid example: minima and argmin", ok && s < 1.0, s);
    }

    // 4: shift/truncation family at n = 5, < 5 s
    {
        Timer t;
        RunOptions o;
        ExperimentReport rep = exp_shift_truncation(5, o);
        bool ok = fixtures_ok(rep);
        double s = t.seconds();
        report(4, "shift/truncation example at n=5", ok && s < 5.0, s);
    }

    // 5: forward-implication property suite, 200 trials per configuration, < 60 s
    {
        Timer t;
        RunOptions o;
        o.trials = 200;
        bool ok = true;
        for (ForwardConfig c : {ForwardConfig::SupReal3, ForwardConfig::SupComplex3,
                                ForwardConfig::P15, ForwardConfig::P2, ForwardConfig::P3,
                                ForwardConfig::Matrix2}) {
            ExperimentReport rep = exp_forward_implication(c, o);
            ok = ok && fixtures_ok(rep) && rep.failures == 0 &&
                 rep.near_boundary_skips < 0.05 * rep.trials;
        }
        double s = t.seconds();
        report(5, "forward implication, 6 x 200 constructed-orthogonal trials", ok && s < 60.0,
               s);
    }

    // 6: real injective iff, 500 trials
    {
        Timer t;
        RunOptions o;
        o.trials = 500;
        ExperimentReport rep = exp_real_injective_iff(o);
        report(6, "real sup-norm biconditional, 500 trials", fixtures_ok(rep) &&
                                                                rep.failures == 0,
               t.seconds());
    }

    // 7: L^p iff + factorization identity (rel 1e-12 inside the experiment)
    {
        Timer t;
        RunOptions o;
        o.trials = 300;
        bool ok = true;
        for (double p : {1.5, 2.0, 3.0}) {
            ExperimentReport rep = exp_lp_iff(p, o);
            ok = ok && fixtures_ok(rep) && rep.failures == 0;
        }
        report(7, "lp biconditional and factorization identity, 3 x 300 trials", ok,
               t.seconds());
    }

    // 8: strong-BJ iff, 300 trials; strong => plain enforced per trial
    {
        Timer t;
        RunOptions o;
        o.trials = 300;
        ExperimentReport rep = exp_strong_bj_iff(o);
        report(8, "strong biconditional, 300 trials", fixtures_ok(rep) && rep.failures == 0,
               t.seconds());
    }

    // 9: oracle agreement, 500 instances per space, disagreements only
    //    inside |margin| < 1e-6 (logged as skips by the experiment)
    {
        Timer t;
        RunOptions o;
        o.trials = 500;
        ExperimentReport rep = exp_oracle_agreement(o);
        report(9, "criterion-vs-definition agreement, 6 x 500 instances",
               fixtures_ok(rep) && rep.failures == 0, t.seconds());
    }

    // 10: certificate validity: the suites above validate every certificate
    //     they emit; this pass re-checks a dedicated sweep explicitly
    {
        Timer t;
        std::mt19937_64 gen(2024);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Tolerances tol;
        int checked = 0, valid = 0;
        for (int i = 0; i < 200; ++i) {
            std::vector<Cx> a(4), b(4);
            for (auto* v : {&a, &b})
                for (Cx& z : *v) z = Cx(dist(gen), dist(gen));
            FiniteFunction f = FiniteFunction::sup(Field::Complex, a);
            FiniteFunction g = FiniteFunction::sup(Field::Complex, b);
            for (const Verdict& v : {bj_ck_complex(f, g), sbj_ck(f, g), bj_generic(f, g)}) {
                ++checked;
                valid += validate_verdict(f, g, v, tol).ok ? 1 : 0;
            }
            std::vector<double> w = {0.5, 1.0, 1.5, 2.0};
            std::vector<Cx> ar(4), br(4);
            for (auto* v : {&ar, &br})
                for (Cx& z : *v) z = dist(gen);
            FiniteFunction fp = FiniteFunction::lp(Field::Real, ar, 3.0, w);
            FiniteFunction gp = FiniteFunction::lp(Field::Real, br, 3.0, w);
            if (!fp.is_zero()) {
                ++checked;
                valid += validate_verdict(fp, gp, bj_lp(fp, gp), tol).ok ? 1 : 0;
            }
            MatrixOperator ma(Field::Complex, 3, 3), mb(Field::Complex, 3, 3);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) {
                    ma.at(r, c) = Cx(dist(gen), dist(gen));
                    mb.at(r, c) = Cx(dist(gen), dist(gen));
                }
            ++checked;
            valid += validate_verdict(ma, mb, bj_matrix(ma, mb), tol).ok ? 1 : 0;
        }
        bool ok = checked > 0 && valid == checked;
        if (!ok) std::printf("       %d/%d certificates validated\n", valid, checked);
        report(10, "certificate validity sweep, 100% of emitted certificates", ok,
               t.seconds());
    }

    if (g_failures == 0) std::printf("acceptance: all 10 criteria PASS\n");
    return g_failures == 0 ? 0 : 1;
}
