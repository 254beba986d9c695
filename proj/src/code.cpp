#include "chaincode/code.hpp"

#include <algorithm>
#include <deque>

namespace chaincode {

namespace {

// Digit index of coefficient `pos` of `a` at level `l`, recomputed on
// demand because subtractions at lower levels can carry upward.
felem digit_at(const rpoly& a, std::size_t pos, std::uint32_t l) {
    return a.ring->digits(coeff(a, pos))[l];
}

} // namespace

std::vector<echelon_row> echelon_reduce(const ring_ptr& ring,
                                        std::uint32_t n,
                                        std::vector<rpoly> rows) {
    const chain_ring& R = *ring;
    const std::uint32_t nu = R.nu();

    std::vector<rpoly> at(n);   // candidate row per degree (empty = none)
    std::vector<std::uint32_t> ev(n, 0);

    std::deque<rpoly> work;
    for (rpoly& r : rows) {
        if (!r.ring->same_ring(R))
            throw input_error("generators belong to different rings");
        rpoly m = mod_zn(r, n);
        if (!is_zero(m)) work.push_back(std::move(m));
    }

    while (!work.empty()) {
        rpoly x = std::move(work.front());
        work.pop_front();
        while (!is_zero(x)) {
            std::uint32_t d = std::uint32_t(deg(x));
            std::uint32_t v = R.val(lead(x));
            if (is_zero(at[d])) {
                // install, normalized so the pivot is exactly gamma^v
                x = scale(x, R.unit_inverse(R.unit_part(lead(x))));
                at[d] = std::move(x);
                ev[d] = v;
                if (v > 0) work.push_back(mul_gamma_pow(at[d], nu - v));
                break;
            }
            if (v >= ev[d]) {
                // eliminate the leading term against the resident row
                relem u = R.unit_part(lead(x));
                x = sub(x, mul_gamma_pow(scale(at[d], u), v - ev[d]));
                continue;
            }
            // strictly smaller pivot valuation: swap in, keep reducing
            // the displaced row
            x = scale(x, R.unit_inverse(R.unit_part(lead(x))));
            std::swap(at[d], x);
            ev[d] = v;
            if (v > 0) work.push_back(mul_gamma_pow(at[d], nu - v));
        }
    }

    // Full digit reduction of every coefficient sitting on another
    // row's pivot position.  Positions descend so a cleared position
    // is never dirtied again; levels ascend because clearing level l
    // can carry into levels above it.
    for (std::uint32_t d = 0; d < n; ++d) {
        if (is_zero(at[d])) continue;
        rpoly r = at[d];
        for (std::uint32_t k = d; k-- > 0;) {
            if (is_zero(at[k])) continue;
            for (std::uint32_t l = ev[k]; l < nu; ++l) {
                felem c = digit_at(r, k, l);
                if (c == 0) continue;
                r = sub(r, mul_gamma_pow(scale(at[k], R.lift(c)), l - ev[k]));
            }
        }
        at[d] = std::move(r);
    }

    // The saturation closure must be a fixpoint now; this is the
    // property that makes membership reduction and the counting
    // formula sound, so verify it outright.
    std::vector<echelon_row> out;
    for (std::uint32_t d = 0; d < n; ++d) {
        if (is_zero(at[d])) continue;
        check_invariant(std::uint32_t(deg(at[d])) == d &&
                            R.val(lead(at[d])) == ev[d] &&
                            R.unit_part(lead(at[d])) == R.one(),
                        "echelon row lost its normalized pivot");
        out.push_back({ev[d], at[d]});
    }
    for (const echelon_row& row : out) {
        rpoly x = mul_gamma_pow(row.poly, nu - row.pivot_val);
        while (!is_zero(x)) {
            std::uint32_t d = std::uint32_t(deg(x));
            std::uint32_t v = R.val(lead(x));
            check_invariant(!is_zero(at[d]) && v >= ev[d],
                            "echelon basis not saturation-closed");
            x = sub(x, mul_gamma_pow(scale(at[d], R.unit_part(lead(x))),
                                     v - ev[d]));
        }
    }
    return out;
}

cyclic_code cyclic_code::build(ring_ptr ring, std::uint32_t n,
                               std::vector<rpoly> gens) {
    if (n < 1) throw input_error("code length n must be >= 1");
    if (gens.empty()) throw input_error("at least one generator required");

    cyclic_code C;
    C.ring_ = ring;
    C.n_ = n;
    for (rpoly& g : gens) {
        if (!g.ring->same_ring(*ring))
            throw input_error("generators belong to different rings");
        C.gens_.push_back(mod_zn(g, n));
    }

    // Close under the shift action: the ideal is the module generated
    // by z^k g mod (z^n - 1) for all k.
    std::vector<rpoly> rows;
    for (const rpoly& g : C.gens_) {
        if (is_zero(g)) continue;
        for (std::uint32_t k = 0; k < n; ++k)
            rows.push_back(mod_zn(shift_z(g, k), n));
    }
    C.rows_ = echelon_reduce(ring, n, std::move(rows));

    C.row_at_.assign(n, -1);
    for (std::size_t idx = 0; idx < C.rows_.size(); ++idx)
        C.row_at_[std::uint32_t(deg(C.rows_[idx].poly))] = int(idx);

    const chain_ring& R = *ring;
    const std::uint32_t nu = R.nu();

    if (C.rows_.empty()) {
        // zero code: every torsion level is zero
        C.tower_.assign(nu, torsion_level{{}, true});
        C.card_exp_ = 0;
        return C;
    }

    // For an ideal the pivot valuations are non-increasing in the
    // degree and rows exist at every degree from t_0 up (shift a row
    // by z and its pivot data moves up one degree unchanged).
    std::uint32_t t0 = std::uint32_t(deg(C.rows_.front().poly));
    check_invariant(C.rows_.size() == n - t0,
                    "ideal echelon basis must cover all degrees >= t_0");
    for (std::size_t idx = 1; idx < C.rows_.size(); ++idx)
        check_invariant(
            C.rows_[idx].pivot_val <= C.rows_[idx - 1].pivot_val,
            "ideal pivot valuations must be non-increasing in degree");

    // Corners: strict drops of the pivot valuation.
    std::uint32_t run = nu + 1;
    for (const echelon_row& row : C.rows_) {
        if (row.pivot_val < run) {
            run = row.pivot_val;
            C.canon_.push_back({row.pivot_val,
                                std::uint32_t(deg(row.poly)),
                                row.poly,
                                rpoly{ring, {}}});
        }
    }

    // Repair pass: a corner row may carry digits below its pivot
    // valuation i_j.  Any such digit-level polynomial lies in the
    // torsion code of its level, which is generated over the residue
    // field by a lower corner's h, so it can be cleared exactly by
    // subtracting a gamma-shifted multiple of that corner.  Process
    // from the bottom corner up: the bottom corner can have no digits
    // below its valuation at all (its torsion levels are zero).
    const std::size_t m = C.canon_.size() - 1;
    auto window_index = [&](std::uint32_t level) -> int {
        // smallest j with i_j <= level: the corner whose h generates
        // the level's torsion code
        for (std::size_t j = 0; j <= m; ++j)
            if (C.canon_[j].i <= level) return int(j);
        return -1;
    };

    for (std::size_t j = m + 1; j-- > 0;) {
        canonical_entry& e = C.canon_[j];
        for (;;) {
            std::uint32_t lv = min_val(e.f);
            if (lv >= e.i) break;
            int w = window_index(lv);
            check_invariant(w > int(j), "stray digits below the corner tower");
            const canonical_entry& low = C.canon_[std::size_t(w)];
            fpoly a = gamma_level_decompose(e.f)[lv];
            field_division dv =
                fdivmod(R.field(), a, phi(low.h));
            check_invariant(is_zero(dv.remainder),
                            "torsion digit not divisible by its level generator");
            rpoly y = mul_gamma_pow(mul(lift_poly(ring, dv.quotient), low.f),
                                    lv - low.i);
            check_invariant(deg(y) < deg(e.f), "repair step would touch the pivot");
            e.f = sub(e.f, y);
        }
        e.h = div_gamma_pow(e.f, e.i);
    }

    // Post-conditions on the corner data; violations are bugs.
    check_invariant(C.canon_.front().i < nu, "top corner valuation out of range");
    for (std::size_t j = 0; j <= m; ++j) {
        const canonical_entry& e = C.canon_[j];
        check_invariant(min_val(e.f) >= e.i, "f_j not divisible by gamma^(i_j)");
        check_invariant(std::uint32_t(deg(e.h)) == e.t &&
                            R.is_unit(lead(e.h)),
                        "h_j must be monic of degree t_j");
        fpoly hb = phi(e.h);
        check_invariant(lead(hb) == 1, "h_j residue must be monic");
        check_invariant(
            is_zero(fdivmod(R.field(), f_zn_minus_1(R.field(), n), hb)
                        .remainder),
            "torsion generator must divide z^n - 1");
        if (j > 0) {
            check_invariant(e.t > C.canon_[j - 1].t && e.i < C.canon_[j - 1].i,
                            "corner degrees/valuations not strictly ordered");
            check_invariant(
                is_zero(fdivmod(R.field(), hb, phi(C.canon_[j - 1].h))
                            .remainder),
                "higher-level torsion generator must divide the lower one");
        }
    }

    // Unique normal form: clear each digit-level polynomial of f_j
    // above level i_j down to degree below the torsion degree of its
    // level window.
    for (std::size_t j = 0; j <= m; ++j) {
        rpoly u = C.canon_[j].f;
        for (std::uint32_t l = C.canon_[j].i + 1; l < nu; ++l) {
            int w = window_index(l);
            check_invariant(w >= 0 && std::size_t(w) <= j,
                            "level window must not look above the corner");
            const canonical_entry& low = C.canon_[std::size_t(w)];
            for (;;) {
                fpoly b = gamma_level_decompose(u)[l];
                if (deg(b) < int(low.t)) break;
                felem c = lead(b);
                std::uint32_t sh = std::uint32_t(deg(b)) - low.t;
                u = sub(u, mul_gamma_pow(shift_z(scale(low.f, R.lift(c)), sh),
                                         l - low.i));
            }
        }
        C.normal_.push_back(std::move(u));
    }

    // Torsion tower read off the windows.
    std::uint32_t im = C.canon_.back().i;
    for (std::uint32_t l = 0; l < nu; ++l) {
        if (l < im) {
            C.tower_.push_back({{}, true});
            continue;
        }
        const canonical_entry& low = C.canon_[std::size_t(window_index(l))];
        C.tower_.push_back({phi(low.h), false});
    }

    // Cardinality exponent via the corner formula, cross-checked
    // against the two other counts it must equal.
    const std::uint64_t s = R.s();
    std::uint64_t corner_sum = std::uint64_t(n) * nu - std::uint64_t(n) * im;
    for (std::size_t j = 0; j <= m; ++j) {
        std::uint64_t kj = j == 0 ? nu - C.canon_[0].i
                                  : C.canon_[j - 1].i - C.canon_[j].i;
        corner_sum -= std::uint64_t(C.canon_[j].t) * kj;
    }
    C.card_exp_ = s * corner_sum;

    std::uint64_t row_sum = 0;
    for (const echelon_row& row : C.rows_) row_sum += nu - row.pivot_val;
    check_invariant(C.card_exp_ == s * row_sum,
                    "corner cardinality disagrees with the echelon count");

    std::uint64_t tor_sum = 0;
    for (const torsion_level& tl : C.tower_)
        tor_sum += tl.zero ? 0 : std::uint64_t(n) - std::uint64_t(deg(tl.gen));
    check_invariant(C.card_exp_ == s * tor_sum,
                    "corner cardinality disagrees with the torsion count");

    // Tower sanity.  The witness for level l goes through its window
    // corner: gamma^(l - i_w) f_w has residue digit h_w at level l and
    // lies in the ideal.  (The bare lift of the level generator is NOT
    // a witness in general; it can require corrections at higher
    // digits, which f_w carries.)
    for (std::uint32_t l = 0; l < nu; ++l) {
        if (C.tower_[l].zero) continue;
        const canonical_entry& w = C.canon_[std::size_t(window_index(l))];
        rpoly wit = mul_gamma_pow(w.f, l - w.i);
        check_invariant(C.contains(wit) && min_val(wit) == l,
                        "torsion witness must lie in the code at level l");
        if (deg(C.tower_[l].gen) > 0)
            check_invariant(
                !C.contains(mul_gamma_pow(rpoly{ring, {R.one()}}, l)),
                "level with nontrivial torsion degree cannot contain gamma^l");
    }

    return C;
}

const std::vector<canonical_entry>& cyclic_code::canonical_generators() const {
    if (is_zero_code())
        throw input_error("zero code has no canonical generators");
    return canon_;
}

const std::vector<rpoly>& cyclic_code::normal_form() const {
    if (is_zero_code())
        throw input_error("zero code has no normal form");
    return normal_;
}

bool cyclic_code::contains(const rpoly& x) const {
    if (!x.ring->same_ring(*ring_))
        throw input_error("membership test across different rings");
    rpoly r = mod_zn(x, n_);
    const chain_ring& R = *ring_;
    while (!is_zero(r)) {
        int at = row_at_[std::size_t(deg(r))];
        if (at < 0) return false;
        const echelon_row& row = rows_[std::size_t(at)];
        std::uint32_t v = R.val(lead(r));
        if (v < row.pivot_val) return false;
        r = sub(r, mul_gamma_pow(scale(row.poly, R.unit_part(lead(r))),
                                 v - row.pivot_val));
    }
    return true;
}

std::uint32_t cyclic_code::rank() const {
    if (is_zero_code()) return 0;
    return n_ - canon_.front().t;
}

std::vector<rpoly> cyclic_code::minimal_spanning_set() const {
    std::vector<rpoly> out;
    if (is_zero_code()) return out;
    const std::size_t m = canon_.size() - 1;
    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint32_t cap = j == m ? n_ - canon_[m].t
                                   : canon_[j + 1].t - canon_[j].t;
        for (std::uint32_t k = 0; k < cap; ++k) {
            rpoly e = shift_z(normal_[j], k);
            check_invariant(deg(e) < int(n_),
                            "spanning shift must not wrap around z^n - 1");
            out.push_back(std::move(e));
        }
    }
    check_invariant(out.size() == rank(),
                    "spanning set size must equal the rank");
    return out;
}

} // namespace chaincode
