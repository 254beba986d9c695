#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chaincode/ring.hpp"

namespace chaincode {

// One bundled reference example with its recorded expectations.  Where
// first-principles recomputation contradicts a recorded value, the
// certified value is carried alongside and the comparison is tracked
// as an expected divergence instead of being silently rewritten.
struct corpus_example {
    std::string id;      // selector: "4.1" .. "4.5"
    std::string summary; // short description for report headers
    ring_descriptor ring;
    std::uint32_t n = 0;
    std::vector<std::string> generators;

    // (i_j, t_j) per corner, ascending j.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> recorded_corners;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> certified_corners;
    std::uint32_t recorded_rank = 0;
    std::uint32_t certified_rank = 0;
    std::uint32_t recorded_distance = 0;
    std::uint32_t certified_distance = 0;
    bool recorded_mds = false;
    bool certified_mds = false;
    bool recorded_mhdr = false;
    bool certified_mhdr = false;
};

const std::vector<corpus_example>& reference_corpus();

enum class entry_status { agree, expected_divergence, mismatch };

// One recorded-vs-computed comparison.  `expected_divergence` means
// the computed value reproduced the certified correction of a recorded
// value; `mismatch` means the computation matched neither.
struct verify_entry {
    std::string quantity;
    std::string recorded;
    std::string computed;
    entry_status status;
};

struct verify_result {
    std::string id;
    std::string summary;
    std::vector<verify_entry> entries;
    bool ok = true; // no mismatches
};

// Recomputes one example from scratch and compares every recorded
// quantity.  threads = 0 uses hardware concurrency for the distance
// search.
verify_result verify_example(const corpus_example& ex,
                             std::uint32_t threads);

// Examples matching a selector ("4.2", or "all" for the whole corpus).
// Unknown selectors are input errors.
std::vector<const corpus_example*> select_examples(const std::string& sel);

std::string render_verify(const verify_result& r);

} // namespace chaincode
