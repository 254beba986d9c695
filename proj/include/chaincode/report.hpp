#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chaincode/code.hpp"
#include "chaincode/metrics.hpp"
#include "chaincode/parse.hpp"

namespace chaincode {

// Per-invocation knobs layered over the spec file: an explicit method
// or budget here wins over the file, which wins over the
// CHAINCODE_MAX_ENUM environment variable, which wins over the
// built-in default.
struct analyze_options {
    std::optional<classify_options::mode> method;
    std::optional<std::uint64_t> max_enum;
    std::uint32_t threads = 0; // 0 = hardware concurrency
};

// A completed analysis: the built code plus its classification, ready
// to render.  `generators` holds the canonical prints of the parsed
// inputs reduced mod z^n - 1 (i.e. what the code was actually built
// from), not the raw input text.
struct analysis_report {
    ring_ptr ring;
    std::uint32_t n = 0;
    std::vector<std::string> generators;
    cyclic_code code;
    classification cls;
    std::uint64_t budget = default_enum_budget;
    std::string method_requested;
};

analysis_report analyze(const code_spec& spec, const analyze_options& opt);

// Human-readable ring name: "Z_25", "F_2[g]/(g^4)", and for s > 1 the
// residue-field modulus is spelled out.
std::string ring_display(const chain_ring& R);

// Deterministic renderings: byte-identical for identical inputs and
// options.  The JSON document has exactly the top-level keys {ring, n,
// generators, canonical, normal_form, torsion, cardinality_exponent,
// rank, distance, mds, mhdr, flags}.
std::string render_text(const analysis_report& rep);
std::string render_json(const analysis_report& rep);

// p^e in decimal, or "" when it would exceed max_digits.
std::string pow_decimal(std::uint64_t p, std::uint64_t e,
                        std::size_t max_digits = 60);

} // namespace chaincode
