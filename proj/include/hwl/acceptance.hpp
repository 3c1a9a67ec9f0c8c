#pragma once

// The ten end-to-end acceptance checks, shared by `hwl verify` and the
// hwl_acceptance test binary.

#include <functional>
#include <string>
#include <vector>

namespace hwl {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
    double time_limit = 0;
};

struct AcceptanceOptions {
    bool quick = false;  // exact-identity checks only (1, 4, 5, 7)
    int threads = 1;
    std::string cache_dir;
    std::vector<int> only;  // empty: all
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  3  dim-2 trace formula (1.2 s / 120 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace hwl
