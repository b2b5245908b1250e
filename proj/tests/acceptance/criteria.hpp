#ifndef ACCEPTANCE_CRITERIA_HPP
#define ACCEPTANCE_CRITERIA_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs every acceptance criterion in order and prints one PASS/FAIL line
/// per criterion. Certificates produced along the way go under `scratch`.
std::vector<CriterionResult> run_all(const std::filesystem::path& scratch, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace acceptance

#endif  // ACCEPTANCE_CRITERIA_HPP
