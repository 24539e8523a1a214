#pragma once

#include <string>
#include <vector>

namespace mdingarch {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct ReproduceOptions {
    int threads = 0;       // 0 = hardware concurrency
    std::string cli_path;  // required by the CLI determinism criterion
    std::vector<int> only; // empty = all criteria
};

// Desk-scale verification suite: each criterion runs a self-contained
// simulation experiment and reports one pass/fail line. Criteria sharing a
// replication set (estimator bias and SE calibration) reuse it.
std::vector<CriterionResult> run_criteria(const ReproduceOptions& opts);

}  // namespace mdingarch
