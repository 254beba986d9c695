#include "chaincode/random_check.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "chaincode/bruteforce.hpp"
#include "chaincode/code.hpp"
#include "chaincode/errors.hpp"
#include "chaincode/metrics.hpp"
#include "chaincode/parse.hpp"
#include "chaincode/report.hpp"

namespace chaincode {

namespace {

// The engine is bit-exact across platforms; distribution shaping is
// done by hand so reports stay byte-identical everywhere.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound ? rng() % bound : 0;
}

// Enough for every pool instance: spans are capped at 2^20 codewords
// and torsion message spaces are smaller still.
constexpr std::uint64_t trial_budget = std::uint64_t(1) << 21;

struct pool_ring {
    ring_ptr ring;
    std::uint32_t n_cap; // keeps |R|^n within the closure cap
};

std::vector<pool_ring> make_pool() {
    auto im = [](std::uint64_t p, std::uint32_t nu) {
        return ring_descriptor{ring_family::integer_modular, p, 1, nu, {}};
    };
    auto px = [](std::uint64_t p, std::uint32_t nu) {
        return ring_descriptor{ring_family::poly_extension, p, 1, nu, {}};
    };
    return {
        {make_ring(im(2, 2)), 10}, // Z_4
        {make_ring(im(2, 3)), 6},  // Z_8
        {make_ring(im(3, 2)), 6},  // Z_9
        {make_ring(im(5, 2)), 4},  // Z_25
        {make_ring(px(2, 2)), 10}, // F_2[g]/(g^2)
        {make_ring(px(2, 4)), 5},  // F_2[g]/(g^4)
        {make_ring(px(3, 3)), 4},  // F_3[g]/(g^3)
    };
}

rpoly random_poly(std::mt19937_64& rng, const ring_ptr& R,
                  std::uint32_t n) {
    std::vector<relem> c(below(rng, n) + 1);
    for (relem& x : c) x = below(rng, R->size());
    return make_rpoly(R, std::move(c));
}

relem random_unit(std::mt19937_64& rng, const ring_ptr& R) {
    for (;;) {
        relem u = below(rng, R->size());
        if (R->is_unit(u)) return u;
    }
}

struct trial_context {
    std::uint32_t index;
    ring_ptr ring;
    std::uint32_t n;
    std::vector<rpoly> gens;
    cyclic_code code;
    span_closure closure;

    std::string where() const {
        return "trial " + std::to_string(index) + " (" +
               ring_display(*ring) + ", n = " + std::to_string(n) + ")";
    }
};

struct outcome {
    enum kind { pass, fail, skip } k = pass;
    std::string why;
};

outcome ok() { return {}; }
outcome not_applicable() { return {outcome::skip, {}}; }
outcome failed(const trial_context& t, const std::string& why) {
    return {outcome::fail, t.where() + ": " + why};
}

bool same_echelon(const cyclic_code& a, const cyclic_code& b) {
    const auto& ra = a.echelon_basis();
    const auto& rb = b.echelon_basis();
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (ra[i].pivot_val != rb[i].pivot_val ||
            !(ra[i].poly == rb[i].poly))
            return false;
    return true;
}

// --- the properties -------------------------------------------------------

outcome prop_cardinality(trial_context& t, std::mt19937_64&) {
    std::uint64_t cw = 1;
    for (std::uint64_t i = 0; i < t.code.cardinality_exponent(); ++i) {
        cw *= t.ring->p();
        if (cw > (std::uint64_t(1) << 21))
            return failed(t, "p^E overflows the closure cap, E = " +
                                 std::to_string(
                                     t.code.cardinality_exponent()));
    }
    if (cw != t.closure.size())
        return failed(t, "p^E = " + std::to_string(cw) + " vs closure " +
                             std::to_string(t.closure.size()));
    return ok();
}

outcome prop_presentation(trial_context& t, std::mt19937_64& rng) {
    // Re-present the same ideal: unit-scale, shuffle, then append a
    // redundant combination and a gamma-multiple of existing
    // generators.
    std::vector<rpoly> alt = t.gens;
    for (rpoly& g : alt) g = scale(g, random_unit(rng, t.ring));
    for (std::size_t i = alt.size(); i > 1; --i)
        std::swap(alt[i - 1], alt[below(rng, i)]);
    const rpoly& pick1 = t.gens[below(rng, t.gens.size())];
    alt.push_back(mod_zn(mul(random_poly(rng, t.ring, t.n), pick1), t.n));
    const rpoly& pick2 = t.gens[below(rng, t.gens.size())];
    alt.push_back(mul_gamma_pow(pick2, std::uint32_t(below(
                                           rng, t.ring->nu()))));

    cyclic_code other = cyclic_code::build(t.ring, t.n, std::move(alt));
    if (other.is_zero_code() != t.code.is_zero_code())
        return failed(t, "re-presentation changed zero-code status");
    if (!same_echelon(t.code, other))
        return failed(t, "echelon basis changed under re-presentation");
    if (!t.code.is_zero_code() &&
        !(other.normal_form() == t.code.normal_form()))
        return failed(t, "normal form changed under re-presentation");
    return ok();
}

outcome prop_idempotence(trial_context& t, std::mt19937_64&) {
    if (t.code.is_zero_code()) return not_applicable();
    cyclic_code again =
        cyclic_code::build(t.ring, t.n, t.code.normal_form());
    if (!same_echelon(t.code, again) ||
        !(again.normal_form() == t.code.normal_form()))
        return failed(t, "normal form is not idempotent");
    return ok();
}

outcome prop_generation(trial_context& t, std::mt19937_64&) {
    std::vector<rpoly> rows;
    for (const echelon_row& r : t.code.echelon_basis())
        rows.push_back(r.poly);
    span_closure module = close_module_span(t.ring, t.n, rows);
    if (!module.same_set(t.closure))
        return failed(t, "echelon rows span a different module, " +
                             std::to_string(module.size()) + " vs " +
                             std::to_string(t.closure.size()));
    if (!t.code.is_zero_code()) {
        span_closure from_nf =
            close_ideal_span(t.ring, t.n, t.code.normal_form());
        if (!from_nf.same_set(t.closure))
            return failed(t, "normal form generates a different ideal, " +
                                 std::to_string(from_nf.size()) + " vs " +
                                 std::to_string(t.closure.size()));
    }
    return ok();
}

outcome prop_corners(trial_context& t, std::mt19937_64&) {
    if (t.code.is_zero_code()) return not_applicable();
    const auto& canon = t.code.canonical_generators();
    const auto& rows = t.code.echelon_basis();
    for (std::size_t j = 0; j < canon.size(); ++j) {
        const canonical_entry& e = canon[j];
        if (j > 0 && !(canon[j - 1].t < e.t && canon[j - 1].i > e.i))
            return failed(t, "corner degrees/valuations not ordered");
        if (!(e.f == mul_gamma_pow(e.h, e.i)))
            return failed(t, "f_j != gamma^(i_j) h_j at j = " +
                                 std::to_string(j));
        if (deg(e.h) != int(e.t) || lead(e.h) != t.ring->one())
            return failed(t, "h_j not monic of degree t_j at j = " +
                                 std::to_string(j));
        if (!t.code.contains(e.f))
            return failed(t, "canonical generator f_" + std::to_string(j) +
                                 " not in the code");
    }
    if (canon.front().t != std::uint32_t(deg(rows.front().poly)))
        return failed(t, "t_0 is not the least echelon degree");
    std::uint32_t min_pivot = rows.front().pivot_val;
    for (const echelon_row& r : rows)
        min_pivot = std::min(min_pivot, r.pivot_val);
    if (canon.back().i != min_pivot)
        return failed(t, "i_m is not the least pivot valuation");
    return ok();
}

outcome prop_tower(trial_context& t, std::mt19937_64&) {
    const residue_field& F = t.ring->field();
    const auto& tower = t.code.torsion_tower();
    if (tower.size() != t.ring->nu())
        return failed(t, "torsion tower has the wrong height");
    for (std::size_t l = 0; l < tower.size(); ++l) {
        fpoly oracle = t.closure.torsion_generator(std::uint32_t(l));
        if (tower[l].zero != is_zero(oracle))
            return failed(t, "torsion level " + std::to_string(l) +
                                 " zero-status disagrees with the oracle");
        if (tower[l].zero) {
            if (l > 0 && !tower[l - 1].zero)
                return failed(t, "torsion tower is not increasing");
            continue;
        }
        if (!(tower[l].gen == oracle))
            return failed(t, "torsion generator at level " +
                                 std::to_string(l) +
                                 " disagrees with the oracle");
        if (lead(tower[l].gen) != 1)
            return failed(t, "torsion generator not monic at level " +
                                 std::to_string(l));
        if (!is_zero(
                fdivmod(F, f_zn_minus_1(F, t.n), tower[l].gen).remainder))
            return failed(t, "torsion generator does not divide z^n - 1");
        if (l > 0 && !tower[l - 1].zero &&
            !is_zero(fdivmod(F, tower[l - 1].gen, tower[l].gen).remainder))
            return failed(t, "higher torsion generator does not divide "
                             "the lower one");
    }
    return ok();
}

outcome prop_membership(trial_context& t, std::mt19937_64& rng) {
    for (int s = 0; s < 5; ++s) {
        std::uint32_t key =
            t.closure.elems[below(rng, t.closure.elems.size())];
        rpoly x = make_rpoly(t.ring, t.closure.decode(key));
        if (!t.code.contains(x))
            return failed(t, "closure element rejected: " + to_string(x));
    }
    for (int s = 0; s < 5; ++s) {
        rpoly x = random_poly(rng, t.ring, t.n);
        if (t.code.contains(x) != t.closure.contains(x))
            return failed(t, "membership disagrees with the oracle on " +
                                 to_string(x));
    }
    return ok();
}

outcome prop_distance(trial_context& t, std::mt19937_64&) {
    if (t.code.is_zero_code()) return not_applicable();
    distance_result via_torsion = distance_via_torsion(t.code, trial_budget, 1);
    distance_result via_exhaustive =
        distance_exhaustive(t.code, trial_budget, 1);
    std::uint32_t via_closure = t.closure.min_weight();
    if (via_torsion.value != via_exhaustive.value ||
        via_torsion.value != via_closure)
        return failed(t, "distances disagree: torsion " +
                             std::to_string(via_torsion.value) +
                             ", exhaustive " +
                             std::to_string(via_exhaustive.value) +
                             ", oracle " + std::to_string(via_closure));
    return ok();
}

outcome prop_spanning(trial_context& t, std::mt19937_64& rng) {
    if (t.code.is_zero_code()) return not_applicable();
    std::vector<rpoly> span = t.code.minimal_spanning_set();
    if (span.size() != t.code.rank())
        return failed(t, "spanning set size " + std::to_string(span.size()) +
                             " vs rank " + std::to_string(t.code.rank()));
    if (!close_module_span(t.ring, t.n, span).same_set(t.closure))
        return failed(t, "minimal spanning set spans a different module");
    span.erase(span.begin() + below(rng, span.size()));
    if (close_module_span(t.ring, t.n, span).size() >= t.closure.size())
        return failed(t, "spanning set is not minimal");
    return ok();
}

outcome prop_mds_mhdr(trial_context& t, std::mt19937_64&) {
    if (t.code.is_zero_code()) return not_applicable();
    distance_result d = distance_via_torsion(t.code, trial_budget, 1);
    mds_verdict mds = is_mds(t.code, d);
    mhdr_verdict mhdr = is_mhdr(t.code, d);
    if (mds.mds != mds.theorem_route)
        return failed(t, "MDS routes disagree: " + mds.evidence);
    if (mds.mds && !mhdr.mhdr)
        return failed(t, "MDS without MHDR: " + mds.evidence + "; " +
                             mhdr.evidence);
    return ok();
}

outcome prop_formula(trial_context& t, std::mt19937_64&) {
    if (t.code.is_zero_code()) return not_applicable();
    std::uint64_t p = t.ring->p();
    if (t.n % p != 0) return not_applicable();
    std::uint64_t rest = t.n;
    std::uint32_t r = 0;
    while (rest % p == 0) {
        rest /= p;
        ++r;
    }
    std::uint64_t t0 = t.code.canonical_generators().front().t;
    std::uint64_t pr = 1;
    for (std::uint32_t i = 0; i < r; ++i) pr *= p;
    if (rest != 1 || t0 >= pr) return not_applicable();
    std::uint32_t predicted = repeated_root_min_weight(p, r, t0);
    distance_result d = distance_via_torsion(t.code, trial_budget, 1);
    if (predicted != d.value)
        return failed(t, "formula d = " + std::to_string(predicted) +
                             " vs search d = " + std::to_string(d.value));
    return ok();
}

outcome prop_roundtrip(trial_context& t, std::mt19937_64& rng) {
    for (int s = 0; s < 3; ++s) {
        rpoly x = random_poly(rng, t.ring, t.n);
        rpoly back = parse_poly(to_string(x), t.ring);
        if (!(back == x))
            return failed(t, "print/parse round trip broke on " +
                                 to_string(x));
    }
    return ok();
}

struct property_def {
    const char* name;
    outcome (*run)(trial_context&, std::mt19937_64&);
};

constexpr property_def property_table[] = {
    {"cardinality-vs-closure", prop_cardinality},
    {"presentation-invariance", prop_presentation},
    {"normal-form-idempotence", prop_idempotence},
    {"generation-equivalence", prop_generation},
    {"corner-structure", prop_corners},
    {"tower-divisibility", prop_tower},
    {"membership-closure", prop_membership},
    {"distance-agreement", prop_distance},
    {"spanning-set-minimality", prop_spanning},
    {"mds-implies-mhdr", prop_mds_mhdr},
    {"formula-agreement", prop_formula},
    {"print-parse-roundtrip", prop_roundtrip},
};

} // namespace

random_check_report run_random_checks(std::uint64_t seed,
                                      std::uint32_t trials,
                                      std::uint32_t max_n) {
    max_n = std::max<std::uint32_t>(max_n, 1);
    random_check_report rep;
    rep.seed = seed;
    rep.trials = trials;
    rep.max_n = max_n;

    rep.properties.push_back({"construction", 0, 0, 0, {}});
    for (const property_def& pd : property_table)
        rep.properties.push_back({pd.name, 0, 0, 0, {}});

    auto note_failure = [](property_result& pr, const std::string& why) {
        ++pr.failed;
        if (pr.failures.size() < 3) pr.failures.push_back(why);
    };

    std::vector<pool_ring> pool = make_pool();
    std::mt19937_64 rng(seed);

    for (std::uint32_t i = 0; i < trials; ++i) {
        const pool_ring& pr = pool[below(rng, pool.size())];
        std::uint32_t n =
            1 + std::uint32_t(below(rng, std::min(pr.n_cap, max_n)));
        std::vector<rpoly> gens;
        std::uint32_t k = 1 + std::uint32_t(below(rng, 3));
        for (std::uint32_t g = 0; g < k; ++g) {
            rpoly cand = random_poly(rng, pr.ring, n);
            if (below(rng, 2))
                cand = mul_gamma_pow(
                    cand, std::uint32_t(below(rng, pr.ring->nu())));
            gens.push_back(std::move(cand));
        }

        try {
            cyclic_code code = cyclic_code::build(pr.ring, n, gens);
            span_closure closure = close_ideal_span(pr.ring, n, gens);
            trial_context t{i,
                            pr.ring,
                            n,
                            std::move(gens),
                            std::move(code),
                            std::move(closure)};
            ++rep.properties[0].passed;
            for (std::size_t pi = 0; pi < std::size(property_table); ++pi) {
                property_result& slot = rep.properties[pi + 1];
                outcome o = property_table[pi].run(t, rng);
                if (o.k == outcome::pass)
                    ++slot.passed;
                else if (o.k == outcome::skip)
                    ++slot.not_applicable;
                else
                    note_failure(slot, o.why);
            }
        } catch (const std::exception& e) {
            note_failure(rep.properties[0],
                         "trial " + std::to_string(i) + " (" +
                             ring_display(*pr.ring) +
                             ", n = " + std::to_string(n) +
                             "): " + e.what());
        }
    }
    return rep;
}

std::string render_random_check(const random_check_report& rep) {
    std::ostringstream out;
    out << "random-check: seed = " << rep.seed
        << ", trials = " << rep.trials << ", max-n = " << rep.max_n << "\n";
    std::size_t width = 0;
    for (const property_result& p : rep.properties)
        width = std::max(width, p.name.size());
    std::uint32_t failures = 0;
    for (const property_result& p : rep.properties) {
        out << "  " << p.name << ":"
            << std::string(width - p.name.size() + 1, ' ') << p.passed
            << " passed";
        if (p.failed) out << ", " << p.failed << " FAILED";
        if (p.not_applicable) out << ", " << p.not_applicable << " n/a";
        out << "\n";
        for (const std::string& f : p.failures) out << "    ! " << f << "\n";
        failures += p.failed;
    }
    out << "result: " << (failures == 0 ? "PASS" : "FAIL") << " ("
        << rep.properties.size() << " properties, " << failures
        << " failure" << (failures == 1 ? "" : "s") << ")\n";
    return out.str();
}

} // namespace chaincode
