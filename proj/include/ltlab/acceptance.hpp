#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ltlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    int checks = 0;
    int failures = 0;
    // first failures, or why the criterion did not run
    std::vector<std::string> notes;
    double seconds = 0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20260601;
    // repository root holding configs/ and tests/golden/
    std::string root;
    // criteria to run; empty means all
    std::vector<int> only;
};

std::string default_root();

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// the CLI invocations pinned by golden files
struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
};
std::vector<GoldenCase> golden_cases(const std::string& root);
// rewrites tests/golden/*.json from the current build
void write_golden(const std::string& root);

}  // namespace ltlab
