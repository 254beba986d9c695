#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaincode/code.hpp"

namespace chaincode {

// Default cap on enumeration size (number of candidates a search may
// visit).  Overridable per call, via --max-enum, or the
// CHAINCODE_MAX_ENUM environment variable.
inline constexpr std::uint64_t default_enum_budget = std::uint64_t(1) << 26;

// In automatic mode the exhaustive search is only run as a cross-check
// when the full codeword count stays below this, independent of the
// (usually larger) budget for the primary search.
inline constexpr std::uint64_t default_cross_check_cap = std::uint64_t(1)
                                                         << 20;

enum class distance_method { torsion_search, exhaustive, formula };
std::string method_name(distance_method m);

struct distance_result {
    std::uint32_t value = 0;
    distance_method method = distance_method::torsion_search;
    std::uint64_t enumerated = 0; // candidates visited by the search
};

// Minimum Hamming weight of the nonzero multiples of gen over F_q in
// F_q[z]/(z^n - 1), for monic gen dividing z^n - 1.  Enumerates the
// q^(n - deg gen) message space (deg gen == 0 short-circuits to 1).
// Throws budget_error when the message space exceeds the budget.
distance_result field_code_min_weight(const residue_field& F,
                                      std::uint32_t n, const fpoly& gen,
                                      std::uint64_t budget,
                                      std::uint32_t threads);

// Minimum distance of the chain-ring code through its top torsion
// code: d(C) equals the minimum weight of the residue code generated
// by h_0.  Throws input_error on the zero code.
distance_result distance_via_torsion(const cyclic_code& C,
                                     std::uint64_t budget,
                                     std::uint32_t threads);

// Direct minimum weight over all p^E codewords, enumerated through the
// echelon basis digit tuples.  Throws input_error on the zero code and
// budget_error when p^E exceeds the budget.
distance_result distance_exhaustive(const cyclic_code& C,
                                    std::uint64_t budget,
                                    std::uint32_t threads);

// Closed-form minimum weight of the ideal <(z - 1)^t0> in
// F_p[z]/(z^(p^r) - 1).  Domain: 0 <= t0 < p^r; out-of-domain t0
// throws input_error.
std::uint32_t repeated_root_min_weight(std::uint64_t p, std::uint32_t r,
                                       std::uint64_t t0);

// MDS status, decided definitionally (|C| meets the Singleton-style
// bound p^(s nu (n - d + 1))) and cross-derived through the principal
// monic generator + Singleton-tight residue code route.  The two must
// agree; both are reported.
struct mds_verdict {
    bool mds = false;           // definitional verdict
    bool theorem_route = false; // structural route verdict
    std::uint32_t d = 0;
    std::uint64_t exponent = 0;     // E
    std::uint64_t bound_exponent = 0; // s nu (n - d + 1)
    bool principal_monic = false;
    std::string evidence;
};
mds_verdict is_mds(const cyclic_code& C, const distance_result& d);
mds_verdict is_mds(const cyclic_code& C, std::uint64_t budget,
                   std::uint32_t threads);

// Maximum-Hamming-distance-with-respect-to-rank status:
// d == n - rank + 1 == t_0 + 1.
struct mhdr_verdict {
    bool mhdr = false;
    std::uint32_t d = 0;
    std::uint32_t rank = 0;
    std::uint32_t t0 = 0;
    std::string evidence;
};
mhdr_verdict is_mhdr(const cyclic_code& C, const distance_result& d);
mhdr_verdict is_mhdr(const cyclic_code& C, std::uint64_t budget,
                     std::uint32_t threads);

// Length-based MHDR prediction for n = n' p^r with gcd(n', p) = 1:
// r == 1 predicts MHDR outright; r > 1 predicts MHDR exactly for
// t0 in {0, 1, p^r - 1}.  Proven only for n' == 1, which the
// applicability flag records.  Throws input_error when p does not
// divide n.
struct mhdr_length_prediction {
    bool mhdr = false;
    bool applicable = false; // n' == 1
    std::uint32_t r = 0;
    std::uint64_t n_prime = 1;
    std::uint64_t t0 = 0;
};
mhdr_length_prediction mhdr_by_length(std::uint64_t n, std::uint64_t p,
                                      std::uint64_t t0);

// A consistency mismatch between two routes that must agree (or whose
// disagreement is itself reportable).
struct consistency_flag {
    std::string check;
    std::string detail;
};

// A sub-method that could not run; never silently dropped.
struct skipped_check {
    std::string check;
    std::string reason;
};

struct classify_options {
    std::uint64_t budget = default_enum_budget;
    std::uint32_t threads = 0; // 0 = hardware concurrency
    enum class mode { automatic, torsion_search, exhaustive, formula };
    mode method = mode::automatic;
    std::uint64_t cross_check_cap = default_cross_check_cap;
};

// Everything the classifier produced for one code, with every
// cross-check it could run.  `primary` is the certified distance used
// for the MDS/MHDR verdicts, when one exists.
struct classification {
    std::uint32_t rank = 0;
    std::uint64_t cardinality_exponent = 0;
    bool zero_code = false;

    std::optional<distance_result> torsion;
    std::optional<distance_result> exhaustive;
    std::optional<std::uint32_t> formula;
    bool formula_applicable = false; // n' == 1 and t0 < p^r
    std::optional<distance_result> primary;

    std::optional<mds_verdict> mds;
    std::optional<mhdr_verdict> mhdr;
    std::optional<mhdr_length_prediction> length_prediction;

    std::vector<consistency_flag> flags;
    std::vector<skipped_check> skipped;
};

// Runs the requested distance computations, derives the MDS/MHDR
// verdicts, and cross-checks every pair of routes that should agree.
// Sub-method errors become skipped entries; only a failure of the
// requested primary method propagates as an exception.
classification classify(const cyclic_code& C, const classify_options& opt);

} // namespace chaincode
