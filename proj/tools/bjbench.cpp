// Timing comparison of the serial reference trial runner against the
// OpenMP one, on the heavier experiments, plus a report-equality check.

#include <chrono>
#include <cstdio>
#include <string>

#include "bjo/verify.hpp"

namespace {

double run_timed(const bjo::ExperimentDef& def, const bjo::RunOptions& opts,
                 bjo::ExperimentReport* out) {
    auto t0 = std::chrono::steady_clock::now();
    *out = def.run(opts);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int trials = argc > 1 ? std::atoi(argv[1]) : -1;
    std::printf("%-22s %10s %10s %8s %s\n", "experiment", "serial[s]", "openmp[s]", "speedup",
                "reports");
    bool all_equal = true;
    for (const auto& def : bjo::experiment_registry()) {
        bjo::RunOptions serial{trials, 42, false};
        bjo::RunOptions parallel{trials, 42, true};
        bjo::ExperimentReport rs, rp;
        if (def.name == "example2" || def.name == "example3") continue;  // fixture-only
        double ts = run_timed(def, serial, &rs);
        double tp = run_timed(def, parallel, &rp);
        bool equal = bjo::report_kv(rs) == bjo::report_kv(rp);
        all_equal = all_equal && equal;
        std::printf("%-22s %10.3f %10.3f %8.2fx %s\n", def.name.c_str(), ts, tp,
                    tp > 0 ? ts / tp : 0.0, equal ? "identical" : "DIFFER");
    }
    return all_equal ? 0 : 1;
}
