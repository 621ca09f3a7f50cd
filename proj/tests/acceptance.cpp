// Acceptance gate: runs the verification suites as numbered criteria, one
// pass/fail line each, with wall-clock budgets pinned alongside the criteria.
// Exit status is zero only when every criterion run both passed and stayed
// inside its budget.

#include "ominal/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

using namespace ominal::verify;

namespace {

struct Criterion {
    int number;
    const char* title;
    double budget_seconds;
    SuiteReport (*run)();
};

SuiteReport typespace_seeded() { return typespace(4241); }

const std::vector<Criterion> kCriteria = {
    {1, "interval acyclicity", 1.0, intervals},
    {2, "cell acyclicity and contraction", 60.0, cells},
    {3, "sphere covers", 120.0, spheres},
    {4, "shrink-family laws", 60.0, shrink_laws},
    {5, "boundary formula", 120.0, boundary},
    {6, "strange cell", 120.0, strange},
    {7, "finite generation and vanishing", 120.0, finiteness},
    {8, "Euler relation", 120.0, euler},
    {9, "stabilization thresholds", 30.0, stabilization},
    {10, "type space", 10.0, typespace_seeded},
    {11, "refinement invariance", 60.0, refinement},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    bool all_passed = true;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.number != only) continue;
        const auto start = std::chrono::steady_clock::now();
        const SuiteReport report = c.run();
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = elapsed <= c.budget_seconds;
        const bool passed = report.passed && in_budget;
        std::printf("[%s] criterion %2d/11  %-34s %7.2fs  (budget %gs, %zu checks)\n",
                    passed ? "PASS" : "FAIL", c.number, c.title, elapsed, c.budget_seconds,
                    report.checks.size());
        if (!in_budget) std::printf("       over budget\n");
        for (const auto& chk : report.checks) {
            if (!chk.passed) {
                std::printf("       failed: %s\n               %s\n", chk.anchor.c_str(),
                            chk.detail.c_str());
            }
        }
        std::fflush(stdout);
        all_passed = all_passed && passed;
    }
    return all_passed ? 0 : 1;
}
