// Acceptance suite runner: one pass/fail line per criterion; nonzero exit on
// any failure. `--criterion N` runs a single criterion (used by ctest to give
// every criterion its own test entry).

#include <cstdio>
#include <cstring>
#include <vector>

#include "igdyn/acceptance.hpp"

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    std::vector<igdyn::CriterionResult> results;
    try {
        if (only > 0) {
            results.push_back(igdyn::run_criterion(only));
        } else {
            results = igdyn::run_all_criteria();
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 2;
    }
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.index,
                    r.title.c_str(), r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
