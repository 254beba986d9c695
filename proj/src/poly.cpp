#include "chaincode/poly.hpp"

#include <algorithm>

namespace chaincode {

namespace {

void strip(std::vector<relem>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}
void strip(std::vector<felem>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

const chain_ring& common_ring(const rpoly& a, const rpoly& b) {
    if (!a.ring->same_ring(*b.ring))
        throw input_error("polynomials belong to different rings");
    return *a.ring;
}

} // namespace

rpoly make_rpoly(ring_ptr ring, std::vector<relem> coeffs) {
    for (relem v : coeffs)
        check_invariant(v < ring->size(), "coefficient out of range");
    strip(coeffs);
    return rpoly{std::move(ring), std::move(coeffs)};
}

fpoly make_fpoly(std::vector<felem> coeffs) {
    strip(coeffs);
    return fpoly{std::move(coeffs)};
}

rpoly add(const rpoly& a, const rpoly& b) {
    const chain_ring& R = common_ring(a, b);
    std::vector<relem> out(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = R.add(coeff(a, i), coeff(b, i));
    strip(out);
    return rpoly{a.ring, std::move(out)};
}

rpoly sub(const rpoly& a, const rpoly& b) {
    const chain_ring& R = common_ring(a, b);
    std::vector<relem> out(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = R.sub(coeff(a, i), coeff(b, i));
    strip(out);
    return rpoly{a.ring, std::move(out)};
}

rpoly mul(const rpoly& a, const rpoly& b) {
    const chain_ring& R = common_ring(a, b);
    if (is_zero(a) || is_zero(b)) return rpoly{a.ring, {}};
    std::vector<relem> out(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out[i + j] = R.add(out[i + j], R.mul(a.c[i], b.c[j]));
    }
    strip(out);
    return rpoly{a.ring, std::move(out)};
}

rpoly scale(const rpoly& a, relem k) {
    std::vector<relem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = a.ring->mul(a.c[i], k);
    strip(out);
    return rpoly{a.ring, std::move(out)};
}

rpoly mul_gamma_pow(const rpoly& a, std::uint32_t k) {
    std::vector<relem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        out[i] = a.ring->mul_gamma_pow(a.c[i], k);
    strip(out);
    return rpoly{a.ring, std::move(out)};
}

rpoly shift_z(const rpoly& a, std::uint32_t k) {
    if (is_zero(a)) return a;
    std::vector<relem> out(a.c.size() + k, 0);
    std::copy(a.c.begin(), a.c.end(), out.begin() + k);
    return rpoly{a.ring, std::move(out)};
}

rpoly mod_zn(const rpoly& a, std::uint32_t n) {
    if (n == 0) throw input_error("code length n must be >= 1");
    if (a.c.size() <= n) return a;
    std::vector<relem> out(n, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        out[i % n] = a.ring->add(out[i % n], a.c[i]);
    strip(out);
    return rpoly{a.ring, std::move(out)};
}

std::uint32_t min_val(const rpoly& a) {
    std::uint32_t v = a.ring->nu();
    for (relem x : a.c) v = std::min(v, a.ring->val(x));
    return v;
}

rpoly div_gamma_pow(const rpoly& a, std::uint32_t k) {
    check_invariant(min_val(a) >= k, "digit downshift would truncate");
    // The downshift must preserve all digits above level k, so peel
    // the digit vector rather than taking unit parts coefficientwise.
    std::vector<relem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        std::vector<felem> d = a.ring->digits(a.c[i]);
        std::vector<felem> shifted(a.ring->nu(), 0);
        for (std::uint32_t l = k; l < a.ring->nu(); ++l)
            shifted[l - k] = d[l];
        out[i] = a.ring->from_digits(shifted);
    }
    strip(out);
    return rpoly{a.ring, std::move(out)};
}

fpoly phi(const rpoly& a) {
    std::vector<felem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        out[i] = a.ring->residue(a.c[i]);
    strip(out);
    return fpoly{std::move(out)};
}

rpoly lift_poly(ring_ptr ring, const fpoly& a) {
    std::vector<relem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = ring->lift(a.c[i]);
    return rpoly{std::move(ring), std::move(out)};
}

std::vector<fpoly> gamma_level_decompose(const rpoly& a) {
    const std::uint32_t nu = a.ring->nu();
    std::vector<std::vector<felem>> lv(nu,
                                       std::vector<felem>(a.c.size(), 0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        std::vector<felem> d = a.ring->digits(a.c[i]);
        for (std::uint32_t l = 0; l < nu; ++l) lv[l][i] = d[l];
    }
    std::vector<fpoly> out(nu);
    for (std::uint32_t l = 0; l < nu; ++l) out[l] = make_fpoly(std::move(lv[l]));
    return out;
}

rpoly recompose(ring_ptr ring, const std::vector<fpoly>& levels) {
    check_invariant(levels.size() == ring->nu(),
                    "level vector has wrong length");
    std::size_t len = 0;
    for (const fpoly& f : levels) len = std::max(len, f.c.size());
    std::vector<relem> out(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<felem> d(ring->nu());
        for (std::uint32_t l = 0; l < ring->nu(); ++l)
            d[l] = coeff(levels[l], i);
        out[i] = ring->from_digits(d);
    }
    strip(out);
    return rpoly{std::move(ring), std::move(out)};
}

scaled_division divide_scaled_monic(const rpoly& k, std::uint32_t i,
                                    const rpoly& w, std::uint32_t j) {
    const chain_ring& R = common_ring(k, w);
    if (is_zero(w) || !R.is_unit(lead(w)))
        throw input_error(
            "divide_scaled_monic: divisor needs a unit leading coefficient");
    if (i < j)
        throw input_error("divide_scaled_monic: need i >= j");

    relem invb = R.unit_inverse(lead(w));
    std::vector<relem> q(deg(k) >= deg(w) ? deg(k) - deg(w) + 1 : 0, 0);
    rpoly s = k;
    while (deg(s) >= deg(w)) {
        relem t = R.mul(lead(s), invb);
        std::uint32_t sh = std::uint32_t(deg(s) - deg(w));
        q[sh] = R.add(q[sh], R.mul_gamma_pow(t, i - j));
        // leading terms cancel exactly, so the degree strictly drops
        s = sub(s, shift_z(scale(w, t), sh));
    }
    strip(q);
    rpoly quot{k.ring, std::move(q)};

    // The defining identity is cheap to verify and catches every
    // mistake in this routine, so check it unconditionally.
    rpoly lhs = mul_gamma_pow(k, i);
    rpoly rhs = add(mul(quot, mul_gamma_pow(w, j)), mul_gamma_pow(s, i));
    check_invariant(lhs == rhs, "scaled division identity failed");
    return {std::move(quot), std::move(s)};
}

fpoly fadd(const residue_field& F, const fpoly& a, const fpoly& b) {
    std::vector<felem> out(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = F.add(coeff(a, i), coeff(b, i));
    strip(out);
    return fpoly{std::move(out)};
}

fpoly fsub(const residue_field& F, const fpoly& a, const fpoly& b) {
    std::vector<felem> out(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = F.sub(coeff(a, i), coeff(b, i));
    strip(out);
    return fpoly{std::move(out)};
}

fpoly fmul(const residue_field& F, const fpoly& a, const fpoly& b) {
    if (is_zero(a) || is_zero(b)) return {};
    std::vector<felem> out(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a.c[i], b.c[j]));
    }
    strip(out);
    return fpoly{std::move(out)};
}

fpoly fscale(const residue_field& F, const fpoly& a, felem k) {
    std::vector<felem> out(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = F.mul(a.c[i], k);
    strip(out);
    return fpoly{std::move(out)};
}

fpoly fmod_zn(const residue_field& F, const fpoly& a, std::uint32_t n) {
    if (n == 0) throw input_error("code length n must be >= 1");
    if (a.c.size() <= n) return a;
    std::vector<felem> out(n, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        out[i % n] = F.add(out[i % n], a.c[i]);
    strip(out);
    return fpoly{std::move(out)};
}

field_division fdivmod(const residue_field& F, const fpoly& a,
                       const fpoly& b) {
    if (is_zero(b)) throw input_error("field polynomial division by zero");
    felem invb = F.inv(lead(b));
    std::vector<felem> q(deg(a) >= deg(b) ? deg(a) - deg(b) + 1 : 0, 0);
    fpoly r = a;
    while (deg(r) >= deg(b)) {
        felem t = F.mul(lead(r), invb);
        std::size_t sh = std::size_t(deg(r) - deg(b));
        q[sh] = F.add(q[sh], t);
        std::vector<felem> step(sh + b.c.size(), 0);
        for (std::size_t i = 0; i < b.c.size(); ++i)
            step[sh + i] = F.mul(b.c[i], t);
        fpoly sp{std::move(step)};
        r = fsub(F, r, sp);
    }
    strip(q);
    return {fpoly{std::move(q)}, std::move(r)};
}

fpoly fmonic(const residue_field& F, const fpoly& a) {
    if (is_zero(a)) return a;
    return fscale(F, a, F.inv(lead(a)));
}

fpoly fgcd(const residue_field& F, fpoly a, fpoly b) {
    while (!is_zero(b)) {
        fpoly r = fdivmod(F, a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return fmonic(F, a);
}

std::size_t weight(const fpoly& a) {
    std::size_t w = 0;
    for (felem x : a.c) w += x != 0;
    return w;
}

std::size_t weight(const rpoly& a) {
    std::size_t w = 0;
    for (relem x : a.c) w += x != 0;
    return w;
}

namespace {

std::string var_pow(const std::string& var, std::size_t d) {
    if (d == 0) return "";
    if (d == 1) return var;
    return var + "^" + std::to_string(d);
}

} // namespace

std::string to_string(const rpoly& a) {
    if (is_zero(a)) return "0";
    const chain_ring& R = *a.ring;
    std::string out;
    for (std::size_t d = a.c.size(); d-- > 0;) {
        relem c = a.c[d];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
            out += R.to_string(c);
            continue;
        }
        if (c != R.one()) {
            std::string cs = R.to_string(c);
            out += (R.single_term(c) ? cs : "(" + cs + ")") + "*";
        }
        out += var_pow("z", d);
    }
    return out;
}

std::string to_string(const residue_field& F, const fpoly& a,
                      const std::string& var) {
    if (is_zero(a)) return "0";
    std::string out;
    for (std::size_t d = a.c.size(); d-- > 0;) {
        felem c = a.c[d];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
            out += F.to_string(c);
            continue;
        }
        if (c != 1) {
            std::string cs = F.to_string(c);
            out += (F.single_term(c) ? cs : "(" + cs + ")") + "*";
        }
        out += var_pow(var, d);
    }
    return out;
}

fpoly f_zn_minus_1(const residue_field& F, std::uint32_t n) {
    std::vector<felem> c(n + 1, 0);
    c[0] = F.neg(1);
    c[n] = 1;
    return fpoly{std::move(c)};
}

} // namespace chaincode
