#pragma once

#include <cstdint>
#include <vector>

#include "chaincode/poly.hpp"

namespace chaincode {

// One row of the canonical echelon basis of a finitely generated
// submodule of R[z]/(z^n - 1).  The leading coefficient is exactly
// gamma^pivot_val (unit part 1), there is at most one row per degree,
// every saturation gamma^(nu - e) * row reduces to zero against the
// basis, and all non-leading coefficients are digit-reduced against
// the rows at their positions.  This makes the basis unique for the
// module, so two presentations of the same code produce bitwise equal
// bases.
struct echelon_row {
    std::uint32_t pivot_val;
    rpoly poly;
};

// Canonical generator data read off the echelon basis corners:
// degrees t_j strictly increasing, valuations i_j strictly decreasing,
// f_j = gamma^(i_j) * h_j with h_j of unit (monic) leading coefficient
// and degree t_j.
struct canonical_entry {
    std::uint32_t i;
    std::uint32_t t;
    rpoly f;
    rpoly h;
};

// Generator of the level-i torsion code over the residue field; the
// zero torsion code is marked explicitly.
struct torsion_level {
    fpoly gen;
    bool zero;
};

// Reduce a set of module generators (shifts are NOT added here) to the
// canonical echelon basis described above, sorted by ascending degree.
std::vector<echelon_row> echelon_reduce(const ring_ptr& ring,
                                        std::uint32_t n,
                                        std::vector<rpoly> rows);

// A cyclic code over a finite chain ring: the ideal of R[z]/(z^n - 1)
// generated by the inputs.  All structural data is computed eagerly at
// build time; the object is immutable afterwards.
class cyclic_code {
public:
    // Reduces generators mod z^n - 1, closes under the z-shift action,
    // and computes echelon basis, canonical generators, normal form,
    // torsion tower and cardinality.  Throws input_error on empty
    // generator lists or mixed rings; internal invariant violations
    // throw internal_error.
    static cyclic_code build(ring_ptr ring, std::uint32_t n,
                             std::vector<rpoly> gens);

    const ring_ptr& ring() const { return ring_; }
    std::uint32_t n() const { return n_; }
    const std::vector<rpoly>& generators() const { return gens_; }
    bool is_zero_code() const { return rows_.empty(); }

    const std::vector<echelon_row>& echelon_basis() const { return rows_; }

    // Corner data; throws input_error for the zero code.
    const std::vector<canonical_entry>& canonical_generators() const;

    // The unique reduced generator sequence u_0 .. u_m (u_j matches
    // canonical entry j).  Bitwise identical across presentations of
    // the same code.  Throws input_error for the zero code.
    const std::vector<rpoly>& normal_form() const;

    // nu levels, index by power of gamma.  Level i carries the monic
    // generator of { phi(k) : gamma^i k in C }.
    const std::vector<torsion_level>& torsion_tower() const {
        return tower_;
    }

    // E with |C| = p^E.  Zero for the zero code.
    std::uint64_t cardinality_exponent() const { return card_exp_; }

    // Ideal membership of x (reduced mod z^n - 1 first).
    bool contains(const rpoly& x) const;

    // Residue dimension of the ambient-span: n - t_0 (0 for the zero
    // code).
    std::uint32_t rank() const;

    // Minimal spanning set { z^k u_j : 0 <= k < cap_j } of size rank().
    std::vector<rpoly> minimal_spanning_set() const;

private:
    cyclic_code() = default;

    ring_ptr ring_;
    std::uint32_t n_ = 0;
    std::vector<rpoly> gens_;
    std::vector<echelon_row> rows_;    // ascending degree
    std::vector<int> row_at_;          // degree -> index in rows_, or -1
    std::vector<canonical_entry> canon_;
    std::vector<rpoly> normal_;
    std::vector<torsion_level> tower_;
    std::uint64_t card_exp_ = 0;
};

} // namespace chaincode
