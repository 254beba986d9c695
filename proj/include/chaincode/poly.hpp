#pragma once

#include <string>
#include <vector>

#include "chaincode/ring.hpp"

namespace chaincode {

// Degree of the zero polynomial; compares below every real degree.
inline constexpr int zero_deg = -1;

// Polynomial over a chain ring.  Ascending coefficients with no
// trailing zeros, so c.empty() <=> zero and deg == c.size() - 1.
struct rpoly {
    ring_ptr ring;
    std::vector<relem> c;

    bool operator==(const rpoly& o) const {
        return c == o.c && ring->same_ring(*o.ring);
    }
};

// Polynomial over the residue field.  Same normalization; the field
// context is passed to each operation.
struct fpoly {
    std::vector<felem> c;
    bool operator==(const fpoly&) const = default;
};

rpoly make_rpoly(ring_ptr ring, std::vector<relem> coeffs);
fpoly make_fpoly(std::vector<felem> coeffs);

inline int deg(const rpoly& a) { return int(a.c.size()) - 1; }
inline int deg(const fpoly& a) { return int(a.c.size()) - 1; }
inline bool is_zero(const rpoly& a) { return a.c.empty(); }
inline bool is_zero(const fpoly& a) { return a.c.empty(); }
inline relem lead(const rpoly& a) { return a.c.empty() ? 0 : a.c.back(); }
inline felem lead(const fpoly& a) { return a.c.empty() ? 0 : a.c.back(); }
inline relem coeff(const rpoly& a, std::size_t i) {
    return i < a.c.size() ? a.c[i] : 0;
}
inline felem coeff(const fpoly& a, std::size_t i) {
    return i < a.c.size() ? a.c[i] : 0;
}

rpoly add(const rpoly& a, const rpoly& b);
rpoly sub(const rpoly& a, const rpoly& b);
rpoly mul(const rpoly& a, const rpoly& b);
rpoly scale(const rpoly& a, relem k);
rpoly mul_gamma_pow(const rpoly& a, std::uint32_t k);
rpoly shift_z(const rpoly& a, std::uint32_t k);

// Reduction mod z^n - 1: coefficient at degree d folds onto d mod n.
rpoly mod_zn(const rpoly& a, std::uint32_t n);

// Least coefficient valuation; nu for the zero polynomial.  A poly is
// gamma^k-divisible exactly when min_val >= k.
std::uint32_t min_val(const rpoly& a);

// Digit shift down by gamma^k; exact when min_val(a) >= k.
rpoly div_gamma_pow(const rpoly& a, std::uint32_t k);

// Coefficientwise residue map and Teichmuller lift.
fpoly phi(const rpoly& a);
rpoly lift_poly(ring_ptr ring, const fpoly& a);

// Level decomposition a = sum_l gamma^l lift(a_l): returns the nu
// digit-level polynomials a_0 .. a_{nu-1}.  recompose inverts it.
std::vector<fpoly> gamma_level_decompose(const rpoly& a);
rpoly recompose(ring_ptr ring, const std::vector<fpoly>& levels);

// Division of gamma^i k by gamma^j w for w with unit leading
// coefficient and i >= j.  Returns (q, s) with
//     gamma^i k == q * gamma^j w + gamma^i s   and   deg s < deg w.
// The gamma^(i-j) factor is folded into q's coefficients.
struct scaled_division {
    rpoly quotient;
    rpoly remainder;
};
scaled_division divide_scaled_monic(const rpoly& k, std::uint32_t i,
                                    const rpoly& w, std::uint32_t j);

// Field polynomial arithmetic.
fpoly fadd(const residue_field& F, const fpoly& a, const fpoly& b);
fpoly fsub(const residue_field& F, const fpoly& a, const fpoly& b);
fpoly fmul(const residue_field& F, const fpoly& a, const fpoly& b);
fpoly fscale(const residue_field& F, const fpoly& a, felem k);
fpoly fmod_zn(const residue_field& F, const fpoly& a, std::uint32_t n);

struct field_division {
    fpoly quotient;
    fpoly remainder;
};
field_division fdivmod(const residue_field& F, const fpoly& a,
                       const fpoly& b);
fpoly fgcd(const residue_field& F, fpoly a, fpoly b); // monic
fpoly fmonic(const residue_field& F, const fpoly& a);

// Hamming weight: number of nonzero coefficients.
std::size_t weight(const fpoly& a);
std::size_t weight(const rpoly& a);

// Canonical printable form, parseable back by the expression parser:
// descending powers of z, coefficients rendered over the ring
// (gamma spelled g, field generator spelled w).
std::string to_string(const rpoly& a);
std::string to_string(const residue_field& F, const fpoly& a,
                      const std::string& var = "z");

// z^n - 1 over the residue field.
fpoly f_zn_minus_1(const residue_field& F, std::uint32_t n);

} // namespace chaincode
