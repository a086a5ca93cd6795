#pragma once

#include <string>
#include <vector>

namespace wka {

struct SuiteItem {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double seconds = 0.0;
    std::string detail;  // measured values and thresholds, human-readable
};

struct SuiteOptions {
    std::string out_dir = "wka-suite-out";
    bool quick = false;  // fast subset: skips the two long-running items
};

struct SuiteResult {
    std::vector<SuiteItem> items;
    bool all_passed = true;
    std::string manifest_path;
};

/// Runs the verification matrix (growth exactness, Heisenberg degree, Schur
/// bound, truncation tails, Neumann inversion vs the dense oracle, window
/// stability of the inverse, contraction inequality, algebra properties, the
/// power-norm probe, and CSV determinism) and writes per-item CSV artifacts
/// plus a JSON manifest under out_dir.
SuiteResult run_suite(const SuiteOptions& options);

}  // namespace wka
