#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twisted {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool gating = true;
    bool pass = false;
    double measured = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceConfig {
    uint64_t seed = 20250826;
    // Desk-scale knobs; the pinned tolerances live in acceptance.cpp.
    int norm_restarts = 4;
    int norm_iterations = 80;
    bool skip_slow = false;  // reserved for debugging; never set in CI
};

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg);
std::vector<CriterionResult> run_all_criteria(const AcceptanceConfig& cfg);

std::string format_result_line(const CriterionResult& r);

}  // namespace twisted
