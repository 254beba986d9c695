#include "chaincode/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace chaincode {

namespace {

using nlohmann::ordered_json;

std::string mode_name(classify_options::mode m) {
    using mode = classify_options::mode;
    switch (m) {
    case mode::torsion_search: return "torsion-search";
    case mode::exhaustive: return "exhaustive";
    case mode::formula: return "formula";
    default: return "auto";
    }
}

const std::string* find_skip(const classification& cls,
                             const std::string& check) {
    for (const skipped_check& s : cls.skipped)
        if (s.check == check) return &s.reason;
    return nullptr;
}

bool has_flag(const classification& cls, const std::string& check) {
    for (const consistency_flag& f : cls.flags)
        if (f.check == check) return true;
    return false;
}

std::string regime_note(const classification& cls) {
    return cls.formula_applicable ? "proven regime, n' = 1"
                                  : "advisory, n' > 1";
}

// Agreement entries for every cross-check that ran without producing a
// mismatch flag, so a report always says which routes were compared.
// Mismatches and agreements are mutually exclusive per check by
// construction.
std::vector<consistency_flag> agreement_notes(const classification& cls) {
    std::vector<consistency_flag> out;
    if (cls.torsion && cls.exhaustive &&
        !has_flag(cls, "distance-methods"))
        out.push_back({"distance-methods",
                       "torsion-search and exhaustive agree: d = " +
                           std::to_string(cls.torsion->value)});
    if (cls.formula && cls.primary &&
        cls.primary->method != distance_method::formula &&
        !has_flag(cls, "formula-vs-search"))
        out.push_back({"formula-vs-search",
                       "formula agrees with " +
                           method_name(cls.primary->method) + ": d = " +
                           std::to_string(*cls.formula) + " (" +
                           regime_note(cls) + ")"});
    if (cls.mds && !has_flag(cls, "mds-routes"))
        out.push_back({"mds-routes",
                       std::string("definitional and structural MDS routes "
                                   "agree: ") +
                           (cls.mds->mds ? "MDS" : "not MDS")});
    if (cls.length_prediction && cls.mhdr &&
        !has_flag(cls, "mhdr-length-vs-definition"))
        out.push_back({"mhdr-length-vs-definition",
                       std::string("length criterion and definition agree: ") +
                           (cls.mhdr->mhdr ? "MHDR" : "not MHDR") +
                           (cls.length_prediction->applicable
                                ? " (criterion applicable, n' = 1)"
                                : " (criterion advisory, n' > 1)")});
    if (cls.mds && cls.mhdr && cls.mds->mds && cls.mhdr->mhdr)
        out.push_back({"mds-implies-mhdr",
                       "MDS holds and MHDR holds with it"});
    return out;
}

} // namespace

analysis_report analyze(const code_spec& spec, const analyze_options& opt) {
    ring_ptr R = make_ring(spec.ring);

    std::vector<rpoly> gens;
    std::vector<std::string> prints;
    for (const std::string& src : spec.generators) {
        rpoly g = mod_zn(parse_poly(src, R), spec.n);
        prints.push_back(to_string(g));
        gens.push_back(std::move(g));
    }

    cyclic_code C = cyclic_code::build(R, spec.n, std::move(gens));

    classify_options copt;
    copt.budget = opt.max_enum  ? *opt.max_enum
                  : spec.max_enum ? *spec.max_enum
                                  : env_max_enum().value_or(
                                        default_enum_budget);
    copt.threads = opt.threads;
    copt.method = opt.method ? *opt.method
                             : spec.method.value_or(
                                   classify_options::mode::automatic);

    classification cls = classify(C, copt);
    return analysis_report{R,
                           spec.n,
                           std::move(prints),
                           std::move(C),
                           std::move(cls),
                           copt.budget,
                           mode_name(copt.method)};
}

std::string ring_display(const chain_ring& R) {
    if (R.family() == ring_family::integer_modular)
        return "Z_" + std::to_string(R.size());
    std::string out = "F_" + std::to_string(R.q()) + "[g]/(g^" +
                      std::to_string(R.nu()) + ")";
    if (R.s() > 1) {
        fpoly mod;
        for (std::uint32_t c : R.field().modulus()) mod.c.push_back(c);
        while (!mod.c.empty() && mod.c.back() == 0) mod.c.pop_back();
        residue_field prime(R.p(), 1, {});
        out += ", F_" + std::to_string(R.q()) + " = F_" +
               std::to_string(R.p()) + "[w]/(" +
               to_string(prime, mod, "w") + ")";
    }
    return out;
}

std::string pow_decimal(std::uint64_t p, std::uint64_t e,
                        std::size_t max_digits) {
    // Quick size screen before the schoolbook loop: digits(p^e) is
    // about e * log10(p), bounded below by e * log10(2) > 0.3 e.
    if (e > max_digits * 4) return "";
    std::vector<std::uint32_t> dec{1}; // little-endian decimal digits
    for (std::uint64_t i = 0; i < e; ++i) {
        std::uint64_t carry = 0;
        for (std::uint32_t& d : dec) {
            std::uint64_t v = std::uint64_t(d) * p + carry;
            d = std::uint32_t(v % 10);
            carry = v / 10;
        }
        while (carry) {
            dec.push_back(std::uint32_t(carry % 10));
            carry /= 10;
        }
        if (dec.size() > max_digits) return "";
    }
    std::string s;
    for (std::size_t i = dec.size(); i-- > 0;) s += char('0' + dec[i]);
    return s;
}

std::string render_text(const analysis_report& rep) {
    const chain_ring& R = *rep.ring;
    const classification& cls = rep.cls;
    std::ostringstream out;

    out << "ring: " << ring_display(R) << " (" << family_name(R.family())
        << ", p = " << R.p() << ", s = " << R.s() << ", nu = " << R.nu()
        << ", |R| = " << R.size() << ")\n";
    out << "length: n = " << rep.n << "\n";
    out << "generators:\n";
    for (const std::string& g : rep.generators) out << "  " << g << "\n";

    if (cls.zero_code) {
        out << "zero code: the generators span only the zero word\n";
        out << "cardinality: |C| = 1 (p^0)\n";
        out << "rank: 0\n";
        for (const skipped_check& s : cls.skipped)
            out << s.check << ": skipped - " << s.reason << "\n";
        return out.str();
    }

    out << "canonical generators:\n";
    const auto& canon = rep.code.canonical_generators();
    for (std::size_t j = 0; j < canon.size(); ++j)
        out << "  j = " << j << ": (i, t) = (" << canon[j].i << ", "
            << canon[j].t << "), f = " << to_string(canon[j].f)
            << ", h = " << to_string(canon[j].h) << "\n";

    out << "normal form:\n";
    const auto& nf = rep.code.normal_form();
    for (std::size_t j = 0; j < nf.size(); ++j)
        out << "  u_" << j << " = " << to_string(nf[j]) << "\n";

    out << "torsion tower:\n";
    const auto& tower = rep.code.torsion_tower();
    for (std::size_t l = 0; l < tower.size(); ++l) {
        out << "  Tor_" << l << ": ";
        if (tower[l].zero)
            out << "zero\n";
        else
            out << "<" << to_string(R.field(), tower[l].gen) << ">\n";
    }

    out << "cardinality: |C| = " << R.p() << "^" << cls.cardinality_exponent;
    if (std::string dec = pow_decimal(R.p(), cls.cardinality_exponent);
        !dec.empty())
        out << " = " << dec;
    out << "\n";
    out << "rank: " << cls.rank << " (minimal spanning set of " << cls.rank
        << " elements)\n";

    if (cls.primary) {
        out << "distance: d = " << cls.primary->value << " via "
            << method_name(cls.primary->method) << "\n";
    } else if (const std::string* why = find_skip(cls, "distance")) {
        out << "distance: skipped - " << *why << "\n";
    } else {
        out << "distance: not computed\n";
    }
    if (cls.torsion)
        out << "  torsion-search: d = " << cls.torsion->value << " ("
            << cls.torsion->enumerated << " candidates)\n";
    else if (const std::string* why = find_skip(cls, "torsion-search"))
        out << "  torsion-search: skipped - " << *why << "\n";
    if (cls.exhaustive)
        out << "  exhaustive: d = " << cls.exhaustive->value << " ("
            << cls.exhaustive->enumerated << " codewords)\n";
    else if (const std::string* why = find_skip(cls, "exhaustive"))
        out << "  exhaustive: skipped - " << *why << "\n";
    if (cls.formula)
        out << "  formula: d = " << *cls.formula << " (" << regime_note(cls)
            << ")\n";
    else if (const std::string* why = find_skip(cls, "formula"))
        out << "  formula: skipped - " << *why << "\n";

    if (cls.mds)
        out << "mds: " << (cls.mds->mds ? "yes" : "no") << " - "
            << cls.mds->evidence << "\n";
    else if (const std::string* why = find_skip(cls, "mds"))
        out << "mds: skipped - " << *why << "\n";
    if (cls.mhdr)
        out << "mhdr: " << (cls.mhdr->mhdr ? "yes" : "no") << " - "
            << cls.mhdr->evidence << "\n";
    else if (const std::string* why = find_skip(cls, "mhdr"))
        out << "mhdr: skipped - " << *why << "\n";
    if (cls.length_prediction)
        out << "length criterion: predicts "
            << (cls.length_prediction->mhdr ? "MHDR" : "not MHDR") << " ("
            << (cls.length_prediction->applicable ? "applicable"
                                                  : "advisory")
            << ", n' = " << cls.length_prediction->n_prime
            << ", r = " << cls.length_prediction->r << ")\n";
    else if (const std::string* why = find_skip(cls, "mhdr-length-criterion"))
        out << "length criterion: skipped - " << *why << "\n";

    out << "checks:\n";
    for (const consistency_flag& f : cls.flags)
        out << "  [MISMATCH] " << f.check << ": " << f.detail << "\n";
    for (const consistency_flag& f : agreement_notes(cls))
        out << "  [ok] " << f.check << ": " << f.detail << "\n";
    for (const skipped_check& s : cls.skipped)
        out << "  [skip] " << s.check << ": " << s.reason << "\n";

    return out.str();
}

std::string render_json(const analysis_report& rep) {
    const chain_ring& R = *rep.ring;
    const classification& cls = rep.cls;
    ordered_json j;

    ordered_json ring;
    ring["family"] = family_name(R.family());
    ring["p"] = R.p();
    ring["s"] = R.s();
    ring["nu"] = R.nu();
    if (!R.descriptor().field_modulus.empty())
        ring["modulus"] = R.descriptor().field_modulus;
    ring["display"] = ring_display(R);
    j["ring"] = std::move(ring);

    j["n"] = rep.n;
    j["generators"] = rep.generators;

    ordered_json canon = ordered_json::array();
    ordered_json nf = ordered_json::array();
    if (!cls.zero_code) {
        for (const canonical_entry& e : rep.code.canonical_generators()) {
            ordered_json ce;
            ce["i"] = e.i;
            ce["t"] = e.t;
            ce["f"] = to_string(e.f);
            ce["h"] = to_string(e.h);
            canon.push_back(std::move(ce));
        }
        for (const rpoly& u : rep.code.normal_form())
            nf.push_back(to_string(u));
    }
    j["canonical"] = std::move(canon);
    j["normal_form"] = std::move(nf);

    ordered_json tower = ordered_json::array();
    for (std::size_t l = 0; l < rep.code.torsion_tower().size(); ++l) {
        const torsion_level& tl = rep.code.torsion_tower()[l];
        ordered_json te;
        te["level"] = l;
        te["zero"] = tl.zero;
        if (!tl.zero) te["generator"] = to_string(R.field(), tl.gen);
        tower.push_back(std::move(te));
    }
    j["torsion"] = std::move(tower);

    j["cardinality_exponent"] = cls.cardinality_exponent;
    j["rank"] = cls.rank;

    if (cls.primary) {
        ordered_json d;
        d["value"] = cls.primary->value;
        d["method"] = method_name(cls.primary->method);
        d["enumerated"] = cls.primary->enumerated;
        if (cls.torsion) d["torsion_search"] = cls.torsion->value;
        if (cls.exhaustive) d["exhaustive"] = cls.exhaustive->value;
        if (cls.formula) d["formula"] = *cls.formula;
        j["distance"] = std::move(d);
    } else {
        j["distance"] = nullptr;
    }

    if (cls.mds) {
        ordered_json m;
        m["verdict"] = cls.mds->mds;
        m["theorem_route"] = cls.mds->theorem_route;
        m["exponent"] = cls.mds->exponent;
        m["bound_exponent"] = cls.mds->bound_exponent;
        m["principal_monic"] = cls.mds->principal_monic;
        m["evidence"] = cls.mds->evidence;
        j["mds"] = std::move(m);
    } else {
        j["mds"] = nullptr;
    }

    if (cls.mhdr) {
        ordered_json m;
        m["verdict"] = cls.mhdr->mhdr;
        m["d"] = cls.mhdr->d;
        m["rank"] = cls.mhdr->rank;
        m["t0"] = cls.mhdr->t0;
        m["evidence"] = cls.mhdr->evidence;
        if (cls.length_prediction) {
            ordered_json lp;
            lp["predicts_mhdr"] = cls.length_prediction->mhdr;
            lp["applicable"] = cls.length_prediction->applicable;
            lp["r"] = cls.length_prediction->r;
            lp["n_prime"] = cls.length_prediction->n_prime;
            m["length_criterion"] = std::move(lp);
        } else {
            m["length_criterion"] = nullptr;
        }
        j["mhdr"] = std::move(m);
    } else {
        j["mhdr"] = nullptr;
    }

    ordered_json flags = ordered_json::array();
    for (const consistency_flag& f : cls.flags) {
        ordered_json e;
        e["kind"] = "mismatch";
        e["check"] = f.check;
        e["detail"] = f.detail;
        flags.push_back(std::move(e));
    }
    for (const consistency_flag& f : agreement_notes(cls)) {
        ordered_json e;
        e["kind"] = "info";
        e["check"] = f.check;
        e["detail"] = f.detail;
        flags.push_back(std::move(e));
    }
    for (const skipped_check& s : cls.skipped) {
        ordered_json e;
        e["kind"] = "skipped";
        e["check"] = s.check;
        e["detail"] = s.reason;
        flags.push_back(std::move(e));
    }
    j["flags"] = std::move(flags);

    return j.dump(2) + "\n";
}

} // namespace chaincode
