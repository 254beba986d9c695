#include "chaincode/metrics.hpp"

#include <algorithm>
#include <thread>

namespace chaincode {

namespace {

std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) {
        if (b != 0 && r > ~std::uint64_t(0) / b) return ~std::uint64_t(0);
        r *= b;
    }
    return r;
}

std::uint32_t resolve_threads(std::uint32_t t) {
    if (t) return t;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Sparse per-slot deltas for the incremental weight scan.  A slot's
// digit runs through 0..q-1; steps[v] moves the accumulated codeword
// from digit v-1 to v, steps[0] restores q-1 back to 0, and absd[v]
// applies digit v starting from 0 (used to seed sharded prefixes).
template <class E>
struct slot_deltas {
    std::vector<std::vector<std::pair<std::uint32_t, E>>> steps;
    std::vector<std::vector<std::pair<std::uint32_t, E>>> absd;
};

template <class E, class Add>
struct weight_dfs {
    const std::vector<slot_deltas<E>>& slots;
    std::uint64_t q;
    Add add;
    std::vector<E> cw;
    int nz = 0;
    std::uint32_t best = ~std::uint32_t(0);

    weight_dfs(const std::vector<slot_deltas<E>>& s, std::uint64_t q_,
               std::uint32_t n, Add a)
        : slots(s), q(q_), add(a), cw(n, E(0)) {}

    void reset() {
        std::fill(cw.begin(), cw.end(), E(0));
        nz = 0;
    }

    void apply(const std::vector<std::pair<std::uint32_t, E>>& d) {
        for (const auto& [pos, delta] : d) {
            E old = cw[pos];
            E nw = add(old, delta);
            nz += int(nw != E(0)) - int(old != E(0));
            cw[pos] = nw;
        }
    }

    void rec(std::size_t idx) {
        if (idx == slots.size()) {
            if (nz > 0 && std::uint32_t(nz) < best) best = std::uint32_t(nz);
            return;
        }
        for (std::uint64_t v = 0; v < q; ++v) {
            if (v) apply(slots[idx].steps[std::size_t(v)]);
            rec(idx + 1);
        }
        apply(slots[idx].steps[0]);
    }
};

// Deterministic parallel scan: shard the first J slots' digit space
// round-robin over the workers and fold the per-worker minima.  The
// fold is order-independent, so the result never depends on thread
// scheduling.
template <class E, class Add>
std::uint32_t run_weight_scan(std::uint32_t n, std::uint64_t q,
                              const std::vector<slot_deltas<E>>& slots,
                              Add add, std::uint32_t threads) {
    const std::size_t S = slots.size();
    std::uint64_t total = checked_pow(q, S);
    if (threads <= 1 || S <= 1 || total <= 4096) {
        weight_dfs<E, Add> dfs(slots, q, n, add);
        dfs.rec(0);
        return dfs.best;
    }
    std::size_t J = 0;
    std::uint64_t P = 1;
    while (J < S && P < std::uint64_t(4) * threads) {
        P *= q;
        ++J;
    }
    std::vector<std::uint32_t> results(threads, ~std::uint32_t(0));
    std::vector<std::thread> pool;
    for (std::uint32_t w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            weight_dfs<E, Add> dfs(slots, q, n, add);
            for (std::uint64_t pidx = w; pidx < P; pidx += threads) {
                dfs.reset();
                std::uint64_t t = pidx;
                for (std::size_t i = 0; i < J; ++i) {
                    std::uint64_t v = t % q;
                    t /= q;
                    if (v) dfs.apply(slots[i].absd[std::size_t(v)]);
                }
                dfs.rec(J);
            }
            results[w] = dfs.best;
        });
    for (std::thread& th : pool) th.join();
    std::uint32_t best = ~std::uint32_t(0);
    for (std::uint32_t r : results) best = std::min(best, r);
    return best;
}

} // namespace

std::string method_name(distance_method m) {
    switch (m) {
    case distance_method::torsion_search: return "torsion-search";
    case distance_method::exhaustive: return "exhaustive";
    case distance_method::formula: return "formula";
    }
    return "?";
}

distance_result field_code_min_weight(const residue_field& F,
                                      std::uint32_t n, const fpoly& gen,
                                      std::uint64_t budget,
                                      std::uint32_t threads) {
    if (n < 1) throw input_error("code length n must be >= 1");
    if (is_zero(gen)) throw input_error("zero code has no nonzero codeword");
    if (lead(gen) != 1) throw input_error("generator must be monic");
    if (deg(gen) > int(n) ||
        !is_zero(fdivmod(F, f_zn_minus_1(F, n), gen).remainder))
        throw input_error("generator must divide z^n - 1");
    const std::uint32_t t = std::uint32_t(deg(gen));
    if (t == n) throw input_error("zero code has no nonzero codeword");
    if (t == 0)
        // the code is everything, so d = 1 without enumerating
        return {1, distance_method::torsion_search, 0};

    const std::uint32_t k = n - t;
    const std::uint64_t q = F.q();
    std::uint64_t total = checked_pow(q, k);
    if (total > budget)
        throw budget_error(
            "instance too large; raise --max-enum or use another distance "
            "method");

    // Messages of degree < k multiply injectively onto codewords, so
    // scanning message digit tuples scans codewords exactly once.
    std::vector<slot_deltas<felem>> slots(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        slot_deltas<felem>& sl = slots[i];
        sl.steps.resize(std::size_t(q));
        sl.absd.resize(std::size_t(q));
        for (std::uint64_t v = 0; v < q; ++v) {
            felem dv = v == 0 ? F.neg(felem(q - 1))
                              : F.sub(felem(v), felem(v - 1));
            for (std::size_t idx = 0; idx < gen.c.size(); ++idx) {
                if (gen.c[idx] == 0) continue;
                if (felem d = F.mul(dv, gen.c[idx]); d != 0)
                    sl.steps[std::size_t(v)].push_back(
                        {i + std::uint32_t(idx), d});
                if (v)
                    if (felem a = F.mul(felem(v), gen.c[idx]); a != 0)
                        sl.absd[std::size_t(v)].push_back(
                            {i + std::uint32_t(idx), a});
            }
        }
    }

    auto add = [&F](felem a, felem b) { return F.add(a, b); };
    std::uint32_t best =
        run_weight_scan<felem>(n, q, slots, add, resolve_threads(threads));
    check_invariant(best != ~std::uint32_t(0),
                    "weight scan found no nonzero codeword");
    return {best, distance_method::torsion_search, total - 1};
}

distance_result distance_via_torsion(const cyclic_code& C,
                                     std::uint64_t budget,
                                     std::uint32_t threads) {
    if (C.is_zero_code())
        throw input_error("zero code has no nonzero codeword");
    // d(C) equals the minimum weight of the residue code generated by
    // the top corner's h.
    const canonical_entry& top = C.canonical_generators().front();
    return field_code_min_weight(C.ring()->field(), C.n(), phi(top.h),
                                 budget, threads);
}

distance_result distance_exhaustive(const cyclic_code& C,
                                    std::uint64_t budget,
                                    std::uint32_t threads) {
    if (C.is_zero_code())
        throw input_error("zero code has no nonzero codeword");
    const chain_ring& R = *C.ring();
    const std::uint64_t q = R.q();
    const std::uint32_t nu = R.nu();

    std::uint64_t digit_slots = 0;
    for (const echelon_row& row : C.echelon_basis())
        digit_slots += nu - row.pivot_val;
    std::uint64_t total = checked_pow(q, digit_slots);
    if (total > budget)
        throw budget_error(
            "instance too large; raise --max-enum or use another distance "
            "method");

    // Every codeword has exactly one expansion sum_d c_d row_d with the
    // digit of c_d below nu - e_d, so scanning digit tuples scans the
    // code exactly once.
    std::vector<slot_deltas<relem>> slots;
    for (const echelon_row& row : C.echelon_basis()) {
        for (std::uint32_t l = row.pivot_val; l < nu; ++l) {
            rpoly scaled = mul_gamma_pow(row.poly, l - row.pivot_val);
            slot_deltas<relem> sl;
            sl.steps.resize(std::size_t(q));
            sl.absd.resize(std::size_t(q));
            for (std::uint64_t v = 0; v < q; ++v) {
                relem dv = v == 0
                               ? R.neg(R.lift(felem(q - 1)))
                               : R.sub(R.lift(felem(v)), R.lift(felem(v - 1)));
                for (std::size_t idx = 0; idx < scaled.c.size(); ++idx) {
                    if (scaled.c[idx] == 0) continue;
                    if (relem d = R.mul(dv, scaled.c[idx]); d != 0)
                        sl.steps[std::size_t(v)].push_back(
                            {std::uint32_t(idx), d});
                    if (v)
                        if (relem a = R.mul(R.lift(felem(v)), scaled.c[idx]);
                            a != 0)
                            sl.absd[std::size_t(v)].push_back(
                                {std::uint32_t(idx), a});
                }
            }
            slots.push_back(std::move(sl));
        }
    }

    auto add = [&R](relem a, relem b) { return R.add(a, b); };
    std::uint32_t best =
        run_weight_scan<relem>(C.n(), q, slots, add, resolve_threads(threads));
    check_invariant(best != ~std::uint32_t(0),
                    "weight scan found no nonzero codeword");
    return {best, distance_method::exhaustive, total - 1};
}

std::uint32_t repeated_root_min_weight(std::uint64_t p, std::uint32_t r,
                                       std::uint64_t t0) {
    std::uint64_t pr = checked_pow(p, r);
    if (t0 >= pr)
        throw input_error("t0 out of range [0, p^r)");
    if (t0 == 0) return 1;
    std::uint64_t pr1 = pr / p; // p^(r-1)
    if (t0 <= (p - 1) * pr1) {
        // l p^(r-1) + 1 <= t0 <= (l+1) p^(r-1) with 0 <= l <= p-2
        std::uint64_t l = (t0 - 1) / pr1;
        return std::uint32_t(l + 2);
    }
    // p^r - p^(r-k) + (i-1) p^(r-k-1) + 1 <= t0 <=
    //     p^r - p^(r-k) + i p^(r-k-1) with 1 <= i <= p-1, 1 <= k <= r-1
    for (std::uint32_t k = 1; k <= r - 1; ++k) {
        std::uint64_t prk_ = checked_pow(p, r - k);
        std::uint64_t prk1 = prk_ / p; // p^(r-k-1)
        std::uint64_t low = pr - prk_;
        std::uint64_t high = pr - prk1;
        if (t0 > low && t0 <= high) {
            std::uint64_t i = (t0 - low - 1) / prk1 + 1;
            check_invariant(i >= 1 && i <= p - 1,
                            "repeated-root case index out of bounds");
            return std::uint32_t((i + 1) * checked_pow(p, k));
        }
    }
    throw internal_error("repeated-root weight cases failed to cover t0");
}

mds_verdict is_mds(const cyclic_code& C, const distance_result& d) {
    const chain_ring& R = *C.ring();
    mds_verdict v;
    v.d = d.value;
    v.exponent = C.cardinality_exponent();
    v.bound_exponent = std::uint64_t(R.s()) * R.nu() *
                       (std::uint64_t(C.n()) - d.value + 1);
    v.mds = v.exponent == v.bound_exponent;

    const auto& canon = C.canonical_generators();
    v.principal_monic = canon.size() == 1 && canon[0].i == 0;
    v.theorem_route =
        v.principal_monic && d.value == canon[0].t + 1;

    v.evidence = "E = " + std::to_string(v.exponent) +
                 " vs s*nu*(n-d+1) = " + std::to_string(v.bound_exponent) +
                 "; principal monic: " +
                 (v.principal_monic ? "yes" : "no") +
                 ", residue Singleton-tight: " +
                 (canon[0].t + 1 == d.value ? "yes" : "no");
    return v;
}

mds_verdict is_mds(const cyclic_code& C, std::uint64_t budget,
                   std::uint32_t threads) {
    return is_mds(C, distance_via_torsion(C, budget, threads));
}

mhdr_verdict is_mhdr(const cyclic_code& C, const distance_result& d) {
    mhdr_verdict v;
    v.d = d.value;
    v.rank = C.rank();
    v.t0 = C.canonical_generators().front().t;
    check_invariant(std::uint64_t(C.n()) - v.rank + 1 == v.t0 + 1,
                    "rank and t_0 fell out of step");
    v.mhdr = v.d == v.t0 + 1;
    v.evidence = "d = " + std::to_string(v.d) +
                 " vs n - rank + 1 = " + std::to_string(v.t0 + 1);
    return v;
}

mhdr_verdict is_mhdr(const cyclic_code& C, std::uint64_t budget,
                     std::uint32_t threads) {
    return is_mhdr(C, distance_via_torsion(C, budget, threads));
}

mhdr_length_prediction mhdr_by_length(std::uint64_t n, std::uint64_t p,
                                      std::uint64_t t0) {
    if (p < 2 || n == 0 || n % p != 0)
        throw input_error("length criterion needs p | n");
    mhdr_length_prediction out;
    out.t0 = t0;
    std::uint64_t rest = n;
    while (rest % p == 0) {
        rest /= p;
        ++out.r;
    }
    out.n_prime = rest;
    out.applicable = rest == 1;
    if (out.r == 1) {
        out.mhdr = true;
    } else {
        std::uint64_t pr = checked_pow(p, out.r);
        out.mhdr = t0 == 0 || t0 == 1 || t0 == pr - 1;
    }
    return out;
}

classification classify(const cyclic_code& C, const classify_options& opt) {
    classification out;
    out.zero_code = C.is_zero_code();
    out.rank = C.rank();
    out.cardinality_exponent = C.cardinality_exponent();

    if (out.zero_code) {
        out.skipped.push_back({"distance", "zero code has no nonzero codeword"});
        out.skipped.push_back({"mds", "zero code"});
        out.skipped.push_back({"mhdr", "zero code"});
        return out;
    }

    const chain_ring& R = *C.ring();
    const std::uint64_t p = R.p();
    const std::uint64_t t0 = C.canonical_generators().front().t;
    const std::uint32_t threads = resolve_threads(opt.threads);
    using mode = classify_options::mode;

    bool p_divides_n = C.n() % p == 0;
    std::uint32_t r = 0;
    std::uint64_t n_prime = C.n();
    if (p_divides_n) {
        while (n_prime % p == 0) {
            n_prime /= p;
            ++r;
        }
    }

    if (opt.method == mode::formula) {
        if (!p_divides_n)
            throw input_error("formula distance method needs p | n");
        out.formula = repeated_root_min_weight(p, r, t0); // may throw input_error
        out.formula_applicable = n_prime == 1;
        if (out.formula_applicable)
            out.primary =
                distance_result{*out.formula, distance_method::formula, 0};
        else {
            out.skipped.push_back(
                {"mds", "formula distance is advisory for n' > 1"});
            out.skipped.push_back(
                {"mhdr", "formula distance is advisory for n' > 1"});
        }
    } else if (opt.method == mode::torsion_search) {
        out.torsion = distance_via_torsion(C, opt.budget, threads);
        out.primary = out.torsion;
    } else if (opt.method == mode::exhaustive) {
        out.exhaustive = distance_exhaustive(C, opt.budget, threads);
        out.primary = out.exhaustive;
    } else {
        // automatic: torsion search is the primary route; exhaustive
        // runs as a cross-check when the code is small enough.  A
        // torsion code too large to enumerate is still exactly solved
        // by the closed form when the length is a pure power of p.
        try {
            out.torsion = distance_via_torsion(C, opt.budget, threads);
            out.primary = out.torsion;
        } catch (const budget_error&) {
            if (!p_divides_n || n_prime != 1) throw;
            out.formula = repeated_root_min_weight(p, r, t0);
            out.formula_applicable = true;
            out.primary =
                distance_result{*out.formula, distance_method::formula, 0};
            out.skipped.push_back(
                {"torsion-search",
                 "q^" + std::to_string(C.n() - t0) +
                     " candidates exceed the budget; the closed form is "
                     "exact for n' = 1 and stands in"});
        }
        std::uint64_t cap = std::min(opt.budget, opt.cross_check_cap);
        std::uint64_t cw = checked_pow(p, out.cardinality_exponent);
        if (cw <= cap) {
            out.exhaustive = distance_exhaustive(C, cap, threads);
        } else {
            out.skipped.push_back(
                {"exhaustive",
                 "codeword count p^" +
                     std::to_string(out.cardinality_exponent) +
                     " exceeds the cross-check cap"});
        }
    }

    // Formula cross-check in non-formula modes.
    if (opt.method != mode::formula && !out.formula) {
        if (!p_divides_n) {
            out.skipped.push_back({"formula", "p does not divide n"});
        } else if (t0 >= checked_pow(p, r)) {
            out.skipped.push_back({"formula", "t0 out of range [0, p^r)"});
        } else {
            out.formula = repeated_root_min_weight(p, r, t0);
            out.formula_applicable = n_prime == 1;
        }
    }

    if (out.primary) {
        out.mds = is_mds(C, *out.primary);
        out.mhdr = is_mhdr(C, *out.primary);
    }

    if (p_divides_n)
        out.length_prediction = mhdr_by_length(C.n(), p, t0);
    else
        out.skipped.push_back({"mhdr-length-criterion", "p does not divide n"});

    // Cross-checks among whatever ran.
    if (out.torsion && out.exhaustive &&
        out.torsion->value != out.exhaustive->value)
        out.flags.push_back(
            {"distance-methods",
             "torsion-search d = " + std::to_string(out.torsion->value) +
                 " vs exhaustive d = " + std::to_string(out.exhaustive->value)});
    if (out.formula && out.primary && out.primary->method != distance_method::formula &&
        *out.formula != out.primary->value)
        out.flags.push_back(
            {"formula-vs-search",
             "formula d = " + std::to_string(*out.formula) + " vs " +
                 method_name(out.primary->method) +
                 " d = " + std::to_string(out.primary->value) +
                 (out.formula_applicable
                      ? " (within the proven regime)"
                      : " (advisory: formula unproven for n' > 1)")});
    if (out.mds && out.mds->mds != out.mds->theorem_route)
        out.flags.push_back(
            {"mds-routes", "definitional and structural MDS routes disagree: " +
                               out.mds->evidence});
    if (out.length_prediction && out.mhdr &&
        out.length_prediction->mhdr != out.mhdr->mhdr)
        out.flags.push_back(
            {"mhdr-length-vs-definition",
             std::string("length criterion predicts ") +
                 (out.length_prediction->mhdr ? "MHDR" : "not MHDR") +
                 ", definition says " + (out.mhdr->mhdr ? "MHDR" : "not MHDR") +
                 (out.length_prediction->applicable
                      ? " (criterion applicable, n' = 1)"
                      : " (criterion advisory, n' > 1)")});
    if (out.mds && out.mhdr && out.mds->mds && !out.mhdr->mhdr)
        out.flags.push_back(
            {"mds-implies-mhdr",
             "code verdicts violate the MDS => MHDR implication"});

    return out;
}

} // namespace chaincode
