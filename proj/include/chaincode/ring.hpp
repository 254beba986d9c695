#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "chaincode/errors.hpp"

namespace chaincode {

// Residue field element: an index in [0, q).  For s == 1 the value
// itself mod p; for s > 1 the base-p packing of the coefficient
// vector of a polynomial in the field generator w.
using felem = std::uint32_t;

// Chain ring element: a canonical code in [0, |R|).  For the
// integer-modular family the value mod p^nu; for the polynomial
// extension family the base-q packing of the gamma-adic digit vector.
using relem = std::uint64_t;

enum class ring_family { integer_modular, poly_extension };

// Construction parameters for a finite chain ring.  Two families:
//   integer_modular : Z_{p^nu}, gamma = p, residue field F_p (s must be 1)
//   poly_extension  : F_{p^s}[u]/(u^nu), gamma = u, residue field F_{p^s}
struct ring_descriptor {
    ring_family family = ring_family::integer_modular;
    std::uint64_t p = 0;
    std::uint32_t s = 1;
    std::uint32_t nu = 1;
    // Monic degree-s modulus of the residue field over F_p, ascending
    // coefficients, size s + 1.  Required iff poly_extension with s > 1.
    std::vector<std::uint32_t> field_modulus;

    bool operator==(const ring_descriptor&) const = default;
};

// The residue field F_q, q = p^s.  All operations are total on valid
// indices; inv(0) throws input_error.
class residue_field {
public:
    residue_field(std::uint64_t p, std::uint32_t s,
                  std::vector<std::uint32_t> modulus);

    std::uint64_t p() const { return p_; }
    std::uint32_t s() const { return s_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    felem add(felem a, felem b) const {
        return tabled_ ? add_t_[a * q_ + b] : add_slow(a, b);
    }
    felem sub(felem a, felem b) const { return add(a, neg(b)); }
    felem neg(felem a) const { return tabled_ ? neg_t_[a] : neg_slow(a); }
    felem mul(felem a, felem b) const {
        return tabled_ ? mul_t_[a * q_ + b] : mul_slow(a, b);
    }
    felem inv(felem a) const;
    felem pow(felem a, std::uint64_t e) const;

    // k -> image of the integer k in the field (k mod p as a constant).
    felem from_int(std::uint64_t k) const { return felem(k % p_); }

    // True when the element renders as a single product term (at most
    // one nonzero coefficient), so it can be printed without parens.
    bool single_term(felem a) const;
    std::string to_string(felem a) const;

private:
    felem add_slow(felem a, felem b) const;
    felem neg_slow(felem a) const;
    felem mul_slow(felem a, felem b) const;

    std::uint64_t p_;
    std::uint32_t s_;
    std::uint64_t q_;
    std::vector<std::uint32_t> mod_;      // empty when s == 1
    std::vector<std::uint32_t> wpow_red_; // w^(s+k) reduced, s coeffs per k
    bool tabled_ = false;
    std::vector<std::uint16_t> add_t_, mul_t_, neg_t_;
};

// A finite chain ring of one of the two supported families.  Immutable
// after construction; share via ring_ptr.  The element encoding is
// canonical: equal codes are equal elements, so relem comparison is
// element comparison.
class chain_ring {
public:
    explicit chain_ring(const ring_descriptor& d);

    const ring_descriptor& descriptor() const { return desc_; }
    ring_family family() const { return desc_.family; }
    std::uint64_t p() const { return desc_.p; }
    std::uint32_t s() const { return desc_.s; }
    std::uint32_t nu() const { return desc_.nu; }
    std::uint64_t q() const { return field_.q(); }
    std::uint64_t size() const { return size_; }
    const residue_field& field() const { return field_; }

    bool same_ring(const chain_ring& other) const {
        return desc_ == other.desc_;
    }

    relem zero() const { return 0; }
    relem one() const { return 1 % size_; }
    relem gamma() const { return base_ % size_; }

    relem add(relem a, relem b) const {
        return tabled_ ? add_t_[a * size_ + b] : add_slow(a, b);
    }
    relem sub(relem a, relem b) const { return add(a, neg(b)); }
    relem neg(relem a) const { return tabled_ ? neg_t_[a] : neg_slow(a); }
    relem mul(relem a, relem b) const {
        return tabled_ ? mul_t_[a * size_ + b] : mul_slow(a, b);
    }

    // gamma-adic valuation; val(0) == nu by convention, so the order
    // test "val(a) >= k" is total.
    std::uint32_t val(relem a) const;
    bool is_unit(relem a) const { return a % base_ != 0; }

    // Inverse of a unit; throws input_error on non-units (including 0).
    relem unit_inverse(relem a) const;

    // r * gamma^k, with k >= nu yielding 0.
    relem mul_gamma_pow(relem a, std::uint32_t k) const {
        return k >= desc_.nu ? 0 : (a * base_pow_[k]) % size_;
    }
    relem gamma_pow(std::uint32_t k) const {
        return k >= desc_.nu ? 0 : base_pow_[k] % size_;
    }

    // For a = gamma^val(a) * u with u a unit: returns u (0 for a == 0).
    // The decomposition is the digit downshift, which is exact in both
    // families.
    relem unit_part(relem a) const {
        return a == 0 ? 0 : a / base_pow_[val(a)];
    }

    // Teichmuller coordinate representatives, indexed by residue:
    // teichmuller_set()[f] is the unique lift of field element f with
    // lift^q == lift.  Size exactly q.
    const std::vector<relem>& teichmuller_set() const { return teich_; }
    relem lift(felem f) const { return teich_[f]; }

    // Index of the level-0 digit; phi(a) in the residue map sense.
    felem residue(relem a) const { return felem(a % base_); }

    // The nu Teichmuller digit indices of a, level 0 first.  Unique:
    // from_digits(digits(a)) == a for every a.
    std::vector<felem> digits(relem a) const;
    relem from_digits(const std::vector<felem>& d) const;

    // k -> k * 1_R.
    relem from_int(std::uint64_t k) const;

    bool single_term(relem a) const;
    std::string to_string(relem a) const;

private:
    relem add_slow(relem a, relem b) const;
    relem neg_slow(relem a) const;
    relem mul_slow(relem a, relem b) const;

    ring_descriptor desc_;
    residue_field field_;
    std::uint64_t base_;  // p for integer-modular, q for poly-extension
    std::uint64_t size_;  // base^nu = |R|
    std::vector<std::uint64_t> base_pow_; // base^k, k in [0, nu]
    std::vector<relem> teich_;
    bool tabled_ = false;
    std::vector<std::uint32_t> add_t_, mul_t_, neg_t_;
};

using ring_ptr = std::shared_ptr<const chain_ring>;

// Validates the descriptor and builds the ring.  Throws input_error
// with a specific message on any invalid parameter.
ring_ptr make_ring(const ring_descriptor& d);

std::string family_name(ring_family f);

} // namespace chaincode
