#pragma once

#include <string>
#include <vector>

namespace igdyn {

/// Outcome of one acceptance criterion of the built-in verification suite.
struct CriterionResult {
    int index = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs acceptance criterion `index` (1-based, 1..10).
CriterionResult run_criterion(int index);

/// Runs the full suite in order.
std::vector<CriterionResult> run_all_criteria();

constexpr int kCriterionCount = 10;

} // namespace igdyn
