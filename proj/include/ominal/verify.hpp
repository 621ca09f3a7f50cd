#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ominal::verify {

// One verified statement. The anchor names the mathematical claim being
// checked; the detail records what was computed on which fixture.
struct Check {
    std::string anchor;
    std::string detail;
    bool passed = true;
};

struct SuiteReport {
    std::string suite;
    bool passed = true;
    std::vector<Check> checks;
};

SuiteReport intervals();
SuiteReport cells();
SuiteReport spheres();
SuiteReport shrink_laws();
SuiteReport boundary();
SuiteReport strange();
SuiteReport euler();
SuiteReport finiteness();
SuiteReport stabilization();
SuiteReport typespace(unsigned seed = 4241);
SuiteReport refinement();

// Suites reachable by name from the command line.
std::vector<std::string> suite_names();
std::optional<SuiteReport> run_suite(const std::string& name, unsigned seed = 4241);

} // namespace ominal::verify
