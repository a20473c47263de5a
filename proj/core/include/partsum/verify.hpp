#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace partsum {

/* ---------------------------------------------------------------------------
   Invariant suites runnable from the CLI. Each suite executes a fixed
   workload of module invariants; when the time budget runs out, remaining
   units are skipped (reported, not failed).
   --------------------------------------------------------------------------- */

struct SuiteResult {
    std::string name;
    bool passed = false;
    uint64_t checks = 0;
    uint64_t failures = 0;
    uint64_t skipped = 0;
    double elapsed_s = 0.0;
    std::string detail;  // first failure, or a budget note

    std::string summary_line() const;
};

SuiteResult run_suite_hyperbola(double budget_s);
SuiteResult run_suite_vaaler(double budget_s, uint64_t seed);
SuiteResult run_suite_inversion(double budget_s);
SuiteResult run_suite_oracle(double budget_s, uint64_t seed);

// which: hyperbola | vaaler | inversion | oracle | all
std::vector<SuiteResult> run_suites(const std::string& which, double budget_s, uint64_t seed);

}  // namespace partsum
