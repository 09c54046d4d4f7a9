#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bjo/verify.hpp"

using namespace bjo;

TEST_CASE("fixture experiments pass") {
    CHECK(exp_example2().ok());
    CHECK(exp_example3().ok());
    RunOptions o;
    o.trials = 10;
    CHECK(exp_matrix_examples(o).ok());
    CHECK(exp_shift_truncation(5, o).ok());
}

TEST_CASE("serial and parallel runners produce byte-identical reports") {
    for (const auto& def : experiment_registry()) {
        RunOptions serial{24, 7, false};
        RunOptions parallel{24, 7, true};
        CAPTURE(def.name);
        CHECK(report_kv(def.run(serial)) == report_kv(def.run(parallel)));
    }
}

TEST_CASE("reports are deterministic for a fixed seed and differ across seeds") {
    RunOptions a{40, 11, true};
    RunOptions b{40, 11, true};
    ExperimentReport r1 = exp_forward_implication(ForwardConfig::SupReal3, a);
    ExperimentReport r2 = exp_forward_implication(ForwardConfig::SupReal3, b);
    CHECK(report_kv(r1) == report_kv(r2));
    CHECK(r1.trials == 40);
    CHECK(r1.passes + r1.failures + r1.near_boundary_skips == 40);
}

TEST_CASE("zero trials is a vacuous pass with fixtures still evaluated") {
    RunOptions o{0, 42, true};
    ExperimentReport r = exp_strong_bj_iff(o);
    CHECK(r.trials == 0);
    CHECK(r.passes == 0);
    CHECK(r.ok());
    CHECK(!r.fixtures.empty());  // the deterministic fixtures still ran
}

TEST_CASE("small runs of every trial experiment succeed") {
    RunOptions o{30, 42, true};
    for (const auto& def : experiment_registry()) {
        CAPTURE(def.name);
        ExperimentReport r = def.run(o);
        CHECK(r.ok());
        CHECK(r.failures == 0);
    }
}

TEST_CASE("registry names are unique and text rendering mentions them") {
    std::vector<std::string> names;
    for (const auto& def : experiment_registry()) names.push_back(def.name);
    std::sort(names.begin(), names.end());
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());

    ExperimentReport r = exp_example3();
    CHECK(report_text(r).find("example3") != std::string::npos);
    CHECK(report_kv(r).find("name=example3") == 0);
}
