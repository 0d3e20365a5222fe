#pragma once

// The acceptance criteria as runnable checks, shared by the test gate and the CLI.

#include <cstdint>
#include <string>
#include <vector>

namespace varietas::suites {

struct CriterionResult {
    int id = 0;
    std::string key;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Criterion {
    int id;
    const char* key;
    const char* title;
    double limit_seconds;  // 0 when unlimited
    bool (*run)(std::uint64_t seed, std::string& detail);
};

const std::vector<Criterion>& criteria();

/// Times the check, turns exceptions into failures and enforces the time limit.
CriterionResult run(const Criterion& c, std::uint64_t seed);

}  // namespace varietas::suites
