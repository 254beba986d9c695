#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chaincode {

struct property_result {
    std::string name;
    std::uint32_t passed = 0;
    std::uint32_t failed = 0;
    std::uint32_t not_applicable = 0;
    std::vector<std::string> failures; // first few, for diagnosis
};

struct random_check_report {
    std::uint64_t seed = 0;
    std::uint32_t trials = 0;
    std::uint32_t max_n = 0;
    std::vector<property_result> properties;

    bool ok() const {
        for (const property_result& p : properties)
            if (p.failed) return false;
        return true;
    }
};

// Draws `trials` random codes from a fixed ring pool (lengths capped
// so the exhaustive span closure stays within budget, further clamped
// by max_n) and checks every structural and metric property against
// the dumb enumeration oracle.  Fully deterministic for a given
// (seed, trials, max_n) triple.
random_check_report run_random_checks(std::uint64_t seed,
                                      std::uint32_t trials,
                                      std::uint32_t max_n);

std::string render_random_check(const random_check_report& rep);

} // namespace chaincode
