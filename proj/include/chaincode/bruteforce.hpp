#pragma once

#include <cstdint>
#include <vector>

#include "chaincode/poly.hpp"

namespace chaincode {

// Exhaustively enumerated span of a tiny code, built by plain additive
// closure with no echelon machinery at all.  This is the dumb-but-
// trustworthy reference the structured implementation is checked
// against: it only relies on ring arithmetic and the digit map.
//
// Elements are coefficient vectors of length n encoded mixed-radix
// (base |R|) into 32-bit keys, kept sorted.
struct span_closure {
    ring_ptr ring;
    std::uint32_t n = 0;
    std::vector<std::uint32_t> elems; // sorted encodings, always contains 0

    std::uint64_t size() const { return elems.size(); }
    bool contains(const rpoly& x) const;
    bool same_set(const span_closure& other) const;

    // Minimum Hamming weight over the nonzero elements; throws
    // input_error when only 0 is present.
    std::uint32_t min_weight() const;

    // Monic generator of { phi(k) : gamma^level * k in span } as an
    // ideal of F_q[z]/(z^n - 1), via gcd with z^n - 1; the zero ideal
    // comes back as the zero polynomial.
    fpoly torsion_generator(std::uint32_t level) const;

    std::vector<relem> decode(std::uint32_t key) const;
    std::uint32_t encode(const std::vector<relem>& v) const;
};

// Additive closure of the R-span of the rows (shifts are not added).
// Requires |R|^n <= cap; throws budget_error otherwise.
span_closure close_module_span(ring_ptr ring, std::uint32_t n,
                               const std::vector<rpoly>& rows,
                               std::uint64_t cap = std::uint64_t(1) << 20);

// Same, after closing the generators under the z-shift action, so the
// result is the full ideal.
span_closure close_ideal_span(ring_ptr ring, std::uint32_t n,
                              const std::vector<rpoly>& gens,
                              std::uint64_t cap = std::uint64_t(1) << 20);

} // namespace chaincode
