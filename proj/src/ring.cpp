#include "chaincode/ring.hpp"

#include <algorithm>

namespace chaincode {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// x^e mod m, for m <= 2^32 so the intermediate product fits in 64 bits.
std::uint64_t pow_mod(std::uint64_t x, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    x %= m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return r;
}

// Remainder of a by b over F_p, both as ascending coefficient vectors,
// b monic.  Used only for the irreducibility check at construction.
std::vector<std::uint32_t> fp_mod(std::vector<std::uint32_t> a,
                                  const std::vector<std::uint32_t>& b,
                                  std::uint64_t p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint64_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (lead != 0)
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] =
                    std::uint32_t((a[shift + i] + p - lead * b[i] % p) % p);
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

} // namespace

// --- residue_field ---------------------------------------------------

residue_field::residue_field(std::uint64_t p, std::uint32_t s,
                             std::vector<std::uint32_t> modulus)
    : p_(p), s_(s), mod_(std::move(modulus)) {
    if (!is_prime(p_)) throw input_error("p must be prime");
    if (s_ < 1) throw input_error("s must be >= 1");

    q_ = 1;
    for (std::uint32_t i = 0; i < s_; ++i) {
        q_ *= p_;
        if (q_ > 65536) throw input_error("ring too large (need q <= 65536)");
    }

    if (s_ == 1) {
        if (!mod_.empty())
            throw input_error("field_modulus only applies when s > 1");
    } else {
        if (mod_.empty())
            throw input_error("field_modulus required for s > 1");
        if (mod_.size() != s_ + 1 || mod_.back() != 1 ||
            std::any_of(mod_.begin(), mod_.end(),
                        [&](std::uint32_t c) { return c >= p_; }))
            throw input_error(
                "field_modulus must be monic of degree s with coefficients in [0, p)");
        // Irreducibility by trial division: a reducible degree-s poly
        // has a monic factor of degree <= s/2.  q <= 65536 keeps the
        // candidate count tiny.
        for (std::uint32_t d = 1; 2 * d <= s_; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<std::uint32_t> cand(d + 1);
                std::uint64_t t = idx;
                for (std::uint32_t i = 0; i < d; ++i) {
                    cand[i] = std::uint32_t(t % p_);
                    t /= p_;
                }
                cand[d] = 1;
                if (fp_mod(mod_, cand, p_).empty())
                    throw input_error("field_modulus must be irreducible over F_p");
            }
        }
        // Powers w^(s+k) reduced mod the modulus, for the product
        // reduction below; k ranges over [0, s-1).
        std::vector<std::uint32_t> cur(s_); // w^s = -(low part of modulus)
        for (std::uint32_t i = 0; i < s_; ++i)
            cur[i] = std::uint32_t((p_ - mod_[i]) % p_);
        for (std::uint32_t k = 0; k + 1 < s_; ++k) {
            wpow_red_.insert(wpow_red_.end(), cur.begin(), cur.end());
            // cur <- w * cur reduced
            std::uint32_t top = cur[s_ - 1];
            for (std::uint32_t i = s_ - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            for (std::uint32_t i = 0; i < s_; ++i)
                cur[i] = std::uint32_t(
                    (cur[i] + top * ((p_ - mod_[i]) % p_)) % p_);
        }
        wpow_red_.insert(wpow_red_.end(), cur.begin(), cur.end());
    }

    if (q_ <= 256) {
        add_t_.resize(q_ * q_);
        mul_t_.resize(q_ * q_);
        neg_t_.resize(q_);
        for (felem a = 0; a < q_; ++a) {
            neg_t_[a] = std::uint16_t(neg_slow(a));
            for (felem b = 0; b < q_; ++b) {
                add_t_[a * q_ + b] = std::uint16_t(add_slow(a, b));
                mul_t_[a * q_ + b] = std::uint16_t(mul_slow(a, b));
            }
        }
        tabled_ = true;
    }
}

felem residue_field::add_slow(felem a, felem b) const {
    if (s_ == 1) return felem((a + std::uint64_t(b)) % p_);
    felem r = 0, shift = 1;
    for (std::uint32_t i = 0; i < s_; ++i) {
        felem da = felem(a % p_), db = felem(b % p_);
        r += felem((da + std::uint64_t(db)) % p_) * shift;
        a /= felem(p_);
        b /= felem(p_);
        shift *= felem(p_);
    }
    return r;
}

felem residue_field::neg_slow(felem a) const {
    if (s_ == 1) return felem((p_ - a) % p_);
    felem r = 0, shift = 1;
    for (std::uint32_t i = 0; i < s_; ++i) {
        felem da = felem(a % p_);
        r += felem((p_ - da) % p_) * shift;
        a /= felem(p_);
        shift *= felem(p_);
    }
    return r;
}

felem residue_field::mul_slow(felem a, felem b) const {
    if (s_ == 1) return felem(a * std::uint64_t(b) % p_);
    std::uint32_t da[16], db[16];
    std::uint64_t conv[31] = {0};
    for (std::uint32_t i = 0; i < s_; ++i) {
        da[i] = a % p_;
        a /= felem(p_);
        db[i] = b % p_;
        b /= felem(p_);
    }
    for (std::uint32_t i = 0; i < s_; ++i)
        for (std::uint32_t j = 0; j < s_; ++j)
            conv[i + j] += std::uint64_t(da[i]) * db[j];
    // Fold conv[s..2s-2] back through the reduced powers of w.
    std::uint64_t out[16];
    for (std::uint32_t i = 0; i < s_; ++i) out[i] = conv[i] % p_;
    for (std::uint32_t k = 0; k + 1 < s_; ++k) {
        std::uint64_t c = conv[s_ + k] % p_;
        if (c == 0) continue;
        for (std::uint32_t i = 0; i < s_; ++i)
            out[i] = (out[i] + c * wpow_red_[k * s_ + i]) % p_;
    }
    felem r = 0, shift = 1;
    for (std::uint32_t i = 0; i < s_; ++i) {
        r += felem(out[i]) * shift;
        shift *= felem(p_);
    }
    return r;
}

felem residue_field::pow(felem a, std::uint64_t e) const {
    felem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

felem residue_field::inv(felem a) const {
    if (a == 0) throw input_error("residue field: inverse of zero");
    return pow(a, q_ - 2);
}

bool residue_field::single_term(felem a) const {
    if (s_ == 1) return true;
    int nz = 0;
    for (std::uint32_t i = 0; i < s_; ++i) {
        if (a % p_ != 0) ++nz;
        a /= felem(p_);
    }
    return nz <= 1;
}

std::string residue_field::to_string(felem a) const {
    if (s_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::uint32_t c[16];
    for (std::uint32_t i = 0; i < s_; ++i) {
        c[i] = a % p_;
        a /= felem(p_);
    }
    std::string out;
    for (std::uint32_t i = s_; i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[0]);
            continue;
        }
        if (c[i] != 1) out += std::to_string(c[i]) + "*";
        out += i == 1 ? "w" : "w^" + std::to_string(i);
    }
    return out;
}

// --- chain_ring -------------------------------------------------------

chain_ring::chain_ring(const ring_descriptor& d)
    : desc_(d),
      field_(d.p, d.family == ring_family::integer_modular ? 1 : d.s,
             d.field_modulus) {
    if (d.nu < 1) throw input_error("nu must be >= 1");
    if (d.family == ring_family::integer_modular && d.s != 1)
        throw input_error("integer-modular family requires s = 1");

    base_ = field_.q(); // == p for integer-modular
    size_ = 1;
    base_pow_.resize(desc_.nu + 1);
    for (std::uint32_t k = 0; k <= desc_.nu; ++k) {
        base_pow_[k] = size_;
        if (k < desc_.nu) {
            if (size_ > (std::uint64_t(1) << 32) / base_)
                throw input_error("ring too large (need |R| <= 2^32)");
            size_ *= base_;
        }
    }

    teich_.resize(field_.q());
    if (d.family == ring_family::integer_modular) {
        // Hensel-style lift: iterating x <- x^p converges to the unique
        // multiplicative representative with the same residue.
        for (std::uint64_t a = 0; a < field_.q(); ++a) {
            std::uint64_t x = a;
            for (std::uint32_t it = 0; it <= desc_.nu + 2; ++it)
                x = pow_mod(x, desc_.p, size_);
            check_invariant(pow_mod(x, desc_.p, size_) == x,
                            "Teichmuller lift did not stabilize");
            teich_[a] = x;
        }
    } else {
        // Constants of F_q are their own lifts.
        for (std::uint64_t a = 0; a < field_.q(); ++a) teich_[a] = a;
    }

    if (size_ <= 256) {
        add_t_.resize(size_ * size_);
        mul_t_.resize(size_ * size_);
        neg_t_.resize(size_);
        for (relem a = 0; a < size_; ++a) {
            neg_t_[a] = std::uint32_t(neg_slow(a));
            for (relem b = 0; b < size_; ++b) {
                add_t_[a * size_ + b] = std::uint32_t(add_slow(a, b));
                mul_t_[a * size_ + b] = std::uint32_t(mul_slow(a, b));
            }
        }
        tabled_ = true;
    }
}

relem chain_ring::add_slow(relem a, relem b) const {
    if (desc_.family == ring_family::integer_modular)
        return (a + b) % size_;
    relem r = 0;
    std::uint64_t shift = 1;
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        r += std::uint64_t(field_.add(felem(a % base_), felem(b % base_))) *
             shift;
        a /= base_;
        b /= base_;
        shift *= base_;
    }
    return r;
}

relem chain_ring::neg_slow(relem a) const {
    if (desc_.family == ring_family::integer_modular)
        return (size_ - a) % size_;
    relem r = 0;
    std::uint64_t shift = 1;
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        r += std::uint64_t(field_.neg(felem(a % base_))) * shift;
        a /= base_;
        shift *= base_;
    }
    return r;
}

relem chain_ring::mul_slow(relem a, relem b) const {
    if (desc_.family == ring_family::integer_modular)
        return a * b % size_;
    felem da[32], db[32];
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        da[l] = felem(a % base_);
        a /= base_;
        db[l] = felem(b % base_);
        b /= base_;
    }
    relem r = 0;
    std::uint64_t shift = 1;
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        felem acc = 0;
        for (std::uint32_t i = 0; i <= l; ++i)
            acc = field_.add(acc, field_.mul(da[i], db[l - i]));
        r += std::uint64_t(acc) * shift;
        shift *= base_;
    }
    return r;
}

std::uint32_t chain_ring::val(relem a) const {
    if (a == 0) return desc_.nu;
    std::uint32_t v = 0;
    while (a % base_ == 0) {
        a /= base_;
        ++v;
    }
    return v;
}

relem chain_ring::unit_inverse(relem a) const {
    if (!is_unit(a))
        throw input_error("unit_inverse: element is not a unit");
    if (desc_.family == ring_family::integer_modular) {
        // a^(phi(p^nu) - 1) with phi = p^(nu-1) (p-1).
        std::uint64_t phi = size_ / desc_.p * (desc_.p - 1);
        return pow_mod(a, phi - 1, size_);
    }
    // Digit recurrence: with a = sum a_l u^l and a_0 invertible,
    // b_0 = a_0^-1 and b_l = -a_0^-1 * sum_{i=1..l} a_i b_{l-i}.
    felem da[32], db[32];
    relem t = a;
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        da[l] = felem(t % base_);
        t /= base_;
    }
    felem inv0 = field_.inv(da[0]);
    db[0] = inv0;
    for (std::uint32_t l = 1; l < desc_.nu; ++l) {
        felem acc = 0;
        for (std::uint32_t i = 1; i <= l; ++i)
            acc = field_.add(acc, field_.mul(da[i], db[l - i]));
        db[l] = field_.neg(field_.mul(inv0, acc));
    }
    relem r = 0;
    std::uint64_t shift = 1;
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        r += std::uint64_t(db[l]) * shift;
        shift *= base_;
    }
    return r;
}

std::vector<felem> chain_ring::digits(relem a) const {
    std::vector<felem> d(desc_.nu);
    if (desc_.family == ring_family::poly_extension) {
        for (std::uint32_t l = 0; l < desc_.nu; ++l) {
            d[l] = felem(a % base_);
            a /= base_;
        }
        return d;
    }
    // Peel Teichmuller digits: subtract the lift of the residue, then
    // divide by p.  The difference is divisible by p exactly because
    // lift and value share a residue.
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        felem idx = felem(a % base_);
        d[l] = idx;
        a = (a + size_ - teich_[idx]) % size_ / base_;
    }
    return d;
}

relem chain_ring::from_digits(const std::vector<felem>& d) const {
    check_invariant(d.size() == desc_.nu, "digit vector has wrong length");
    relem r = 0;
    for (std::uint32_t l = 0; l < desc_.nu; ++l)
        r = add(r, mul_gamma_pow(teich_[d[l]], l));
    return r;
}

relem chain_ring::from_int(std::uint64_t k) const {
    if (desc_.family == ring_family::integer_modular) return k % size_;
    return field_.from_int(k); // constant digit at level 0
}

bool chain_ring::single_term(relem a) const {
    if (desc_.family == ring_family::integer_modular) return true;
    int nz = 0;
    felem last = 0;
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        felem d = felem(a % base_);
        if (d != 0) {
            ++nz;
            last = d;
        }
        a /= base_;
    }
    return nz == 0 || (nz == 1 && field_.single_term(last));
}

std::string chain_ring::to_string(relem a) const {
    if (desc_.family == ring_family::integer_modular)
        return std::to_string(a);
    if (a == 0) return "0";
    std::string out;
    for (std::uint32_t l = 0; l < desc_.nu; ++l) {
        felem d = felem(a % base_);
        a /= base_;
        if (d == 0) continue;
        if (!out.empty()) out += "+";
        std::string coeff = field_.to_string(d);
        if (l == 0) {
            out += coeff;
            continue;
        }
        if (d != 1)
            out += (field_.single_term(d) ? coeff : "(" + coeff + ")") + "*";
        out += l == 1 ? "g" : "g^" + std::to_string(l);
    }
    return out;
}

ring_ptr make_ring(const ring_descriptor& d) {
    if (d.family == ring_family::integer_modular && !d.field_modulus.empty())
        throw input_error("field_modulus only applies when s > 1");
    return std::make_shared<const chain_ring>(d);
}

std::string family_name(ring_family f) {
    return f == ring_family::integer_modular ? "integer-modular"
                                             : "poly-extension";
}

} // namespace chaincode
