#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expmbt {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the ten release criteria and returns one result per criterion.
std::vector<CriterionResult> run_acceptance();

/// Prints one "PASS"/"FAIL" line per criterion; returns true if all passed.
bool report_acceptance(std::ostream& out);

} // namespace expmbt
