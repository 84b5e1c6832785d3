#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace exlie::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

struct Options {
    bool quick = false;  // skip abstract builds with n >= 7
    std::uint64_t seed = 1;
};

// Runs criteria 1..10 in order; on_result is called as each one finishes.
std::vector<CriterionResult> run_all(const Options& opt, const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_line(const CriterionResult& r);

}  // namespace exlie::acceptance
