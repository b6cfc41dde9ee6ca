#ifndef THERMAL_VERIFY_HPP
#define THERMAL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "thermal/model.hpp"

namespace thermal {

struct CriterionResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    int excluded = 0;      // instances skipped by an explicit hypothesis check
    std::string expected;
    std::string observed;
    std::string detail;    // first failure description
    std::string instance_digest = "-";

    bool pass() const { return failures == 0; }
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    // Scale knob: trials=100 runs every property at its full acceptance
    // volume (e.g. 5x trials for the max-flow/min-cut sweep).
    int trials = 100;
};

// Property suite over seeded random instances; one result per criterion.
std::vector<CriterionResult> run_verification(const VerifyOptions& options);

// The subset of checks applicable to a single parsed network.
std::vector<CriterionResult> run_verification_file(const ThermalNetwork& net);

std::string render_report_text(const std::vector<CriterionResult>& results);
std::string render_report_csv(const std::vector<CriterionResult>& results);
bool all_pass(const std::vector<CriterionResult>& results);

// Fewest packets (unlimited budget, vertex-simple walks) that restore the
// given flow on an exhausted network; breadth-first search over cooling
// states. Exponential: keep to a handful of internal nodes.
long long min_packets_exhaustive(const ThermalNetwork& exhausted, long long target_flow);

}  // namespace thermal

#endif
