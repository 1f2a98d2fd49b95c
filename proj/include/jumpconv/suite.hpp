#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace jumpconv {

struct CriterionResult {
    std::string id;
    bool pass = false;
    bool supplementary = false;  // extra evidence, not one of the numbered criteria
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    bool quick = false;  // caps every Monte Carlo run at 1000 trials
    unsigned threads = 0;
    std::uint64_t seed = 20240601;
    std::filesystem::path out_dir;      // per-experiment outputs when nonempty
    std::vector<std::string> only;      // criterion id prefixes; empty runs everything
    std::ostream* log = nullptr;        // one line per criterion as it finishes
};

std::vector<CriterionResult> run_suite(const SuiteOptions& options);
std::string format_result_line(const CriterionResult& r);
std::string suite_csv(const std::vector<CriterionResult>& results);

}  // namespace jumpconv
