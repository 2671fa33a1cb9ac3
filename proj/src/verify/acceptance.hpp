#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rotabouss::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0.0;
    double budget = 0.0;  // wall-clock limit in seconds; exceeding it fails the criterion
};

struct AcceptanceOptions {
    bool quick = false;    // skip the two long simulator runs (criteria 9 and 10)
    std::vector<int> only;  // run just these criteria when non-empty
    std::ostream* progress = nullptr;  // one line per finished criterion
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

// One PASS/FAIL/SKIP line per criterion followed by a summary line.
void print_table(std::ostream& os, std::span<const CriterionResult> results);
std::string format_line(const CriterionResult& r);
std::string summary_line(std::span<const CriterionResult> results);
bool all_passed(std::span<const CriterionResult> results);

}  // namespace rotabouss::verify
