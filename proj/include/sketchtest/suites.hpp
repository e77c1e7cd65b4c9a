#pragma once

#include <string>
#include <vector>

namespace sketchtest::suites {

/// One validation criterion: a self-contained experiment with a pinned
/// threshold. Criteria are deterministic given their built-in base seeds.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string summary; // measured values, thresholds, intervals
    double elapsed_seconds = 0.0;
};

int num_criteria();

/// Runs one criterion (1-based id) with the given thread count.
CriterionResult run_criterion(int id, int jobs);

/// Named suites accepted by the CLI `validate` command; each maps to a subset
/// of criterion ids.
std::vector<std::string> suite_names();
std::vector<int> suite_criteria(const std::string& suite);

} // namespace sketchtest::suites
