#include "chaincode/bruteforce.hpp"

#include <algorithm>

namespace chaincode {

std::vector<relem> span_closure::decode(std::uint32_t key) const {
    std::vector<relem> v(n);
    std::uint64_t k = key;
    for (std::uint32_t i = 0; i < n; ++i) {
        v[i] = k % ring->size();
        k /= ring->size();
    }
    return v;
}

std::uint32_t span_closure::encode(const std::vector<relem>& v) const {
    std::uint64_t key = 0;
    for (std::uint32_t i = n; i-- > 0;) key = key * ring->size() + v[i];
    return std::uint32_t(key);
}

bool span_closure::contains(const rpoly& x) const {
    rpoly r = mod_zn(x, n);
    std::vector<relem> v(n, 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) v[i] = r.c[i];
    return std::binary_search(elems.begin(), elems.end(), encode(v));
}

bool span_closure::same_set(const span_closure& other) const {
    return n == other.n && ring->same_ring(*other.ring) &&
           elems == other.elems;
}

std::uint32_t span_closure::min_weight() const {
    std::uint32_t best = ~std::uint32_t(0);
    for (std::uint32_t key : elems) {
        if (key == 0) continue;
        std::vector<relem> v = decode(key);
        std::uint32_t w = 0;
        for (relem c : v) w += c != 0;
        best = std::min(best, w);
    }
    if (best == ~std::uint32_t(0))
        throw input_error("zero code has no nonzero codeword");
    return best;
}

fpoly span_closure::torsion_generator(std::uint32_t level) const {
    const chain_ring& R = *ring;
    fpoly g = f_zn_minus_1(R.field(), n);
    bool hit = false;
    for (std::uint32_t key : elems) {
        if (key == 0) continue;
        std::vector<relem> v = decode(key);
        bool deep = true;
        for (relem c : v)
            if (R.val(c) < level) {
                deep = false;
                break;
            }
        if (!deep) continue;
        // level digits of gamma^level * k are exactly phi(k)
        std::vector<felem> digs(n);
        for (std::uint32_t i = 0; i < n; ++i)
            digs[i] = R.digits(v[i])[level];
        fpoly ph = make_fpoly(std::move(digs));
        if (is_zero(ph)) continue;
        hit = true;
        g = fgcd(R.field(), g, ph);
        if (deg(g) == 0) break;
    }
    if (!hit) return {};
    return g;
}

span_closure close_module_span(ring_ptr ring, std::uint32_t n,
                               const std::vector<rpoly>& rows,
                               std::uint64_t cap) {
    const chain_ring& R = *ring;
    std::uint64_t space = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (space > cap / R.size())
            throw budget_error("span closure: |R|^n exceeds the cap");
        space *= R.size();
    }

    span_closure S;
    S.ring = ring;
    S.n = n;
    std::vector<bool> seen(space, false);
    seen[0] = true;
    S.elems.push_back(0);

    std::vector<relem> rv(n), cand(n);
    for (const rpoly& row : rows) {
        rpoly m = mod_zn(row, n);
        std::fill(rv.begin(), rv.end(), 0);
        for (std::size_t i = 0; i < m.c.size(); ++i) rv[i] = m.c[i];

        // All scalar multiples of the row, computed once.
        std::vector<std::vector<relem>> mult(std::size_t(R.size()));
        bool redundant = true;
        for (relem c = 0; c < R.size(); ++c) {
            std::vector<relem> mc(n);
            for (std::uint32_t i = 0; i < n; ++i) mc[i] = R.mul(c, rv[i]);
            if (!seen[S.encode(mc)]) redundant = false;
            mult[std::size_t(c)] = std::move(mc);
        }
        // The span so far is a subgroup, so if every multiple of the
        // row is already inside, the row adds nothing.
        if (redundant) continue;

        std::size_t snapshot = S.elems.size();
        for (std::size_t e = 0; e < snapshot; ++e) {
            std::vector<relem> base = S.decode(S.elems[e]);
            for (relem c = 0; c < R.size(); ++c) {
                const std::vector<relem>& mc = mult[std::size_t(c)];
                for (std::uint32_t i = 0; i < n; ++i)
                    cand[i] = R.add(base[i], mc[i]);
                std::uint32_t key = S.encode(cand);
                if (!seen[key]) {
                    seen[key] = true;
                    S.elems.push_back(key);
                }
            }
        }
    }
    std::sort(S.elems.begin(), S.elems.end());
    return S;
}

span_closure close_ideal_span(ring_ptr ring, std::uint32_t n,
                              const std::vector<rpoly>& gens,
                              std::uint64_t cap) {
    std::vector<rpoly> rows;
    for (const rpoly& g : gens)
        for (std::uint32_t k = 0; k < n; ++k)
            rows.push_back(mod_zn(shift_z(mod_zn(g, n), k), n));
    return close_module_span(std::move(ring), n, rows, cap);
}

} // namespace chaincode
