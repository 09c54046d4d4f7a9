#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bjo/tensor.hpp"

namespace bjo {

struct FixtureRow {
    std::string label;
    std::string expected;
    std::string observed;
    bool pass = true;
};

struct ExperimentReport {
    std::string name;
    int trials = 0;
    int passes = 0;
    int failures = 0;
    int near_boundary_skips = 0;
    std::vector<FixtureRow> fixtures;
    std::uint64_t seed = 0;
    std::string calibration_error;  // set when the skip rate exceeds 5%

    bool ok() const;
};

/// Execution options shared by all experiments. `parallel` selects the
/// OpenMP trial loop; the serial path is the reference implementation and
/// produces an identical report for the same seed.
struct RunOptions {
    int trials = -1;  // -1: experiment default
    std::uint64_t seed = 42;
    bool parallel = true;
};

enum class ForwardConfig { SupReal3, SupComplex3, P15, P2, P3, Matrix2 };

ExperimentReport exp_forward_implication(ForwardConfig config, const RunOptions& opts);
ExperimentReport exp_example2();
ExperimentReport exp_example3();
ExperimentReport exp_real_injective_iff(const RunOptions& opts);
ExperimentReport exp_lp_iff(double p, const RunOptions& opts);
ExperimentReport exp_unique_attainment(const RunOptions& opts);
ExperimentReport exp_strong_bj_iff(const RunOptions& opts);
ExperimentReport exp_matrix_examples(const RunOptions& opts);
ExperimentReport exp_shift_truncation(std::size_t n, const RunOptions& opts);
ExperimentReport exp_oracle_agreement(const RunOptions& opts);

struct ExperimentDef {
    std::string name;
    std::function<ExperimentReport(const RunOptions&)> run;
};

/// All experiments with their default trial counts, in a stable order.
const std::vector<ExperimentDef>& experiment_registry();

std::string report_text(const ExperimentReport& rep);
std::string report_kv(const ExperimentReport& rep);  // line-delimited key=value

}  // namespace bjo
