#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaincode/corpus.hpp"
#include "chaincode/parse.hpp"
#include "chaincode/random_check.hpp"
#include "chaincode/report.hpp"

using namespace chaincode;

namespace {

ring_ptr z4() {
    static ring_ptr r = make_ring({ring_family::integer_modular, 2, 1, 2, {}});
    return r;
}

ring_ptr z25() {
    static ring_ptr r = make_ring({ring_family::integer_modular, 5, 1, 2, {}});
    return r;
}

ring_ptr f2u4() {
    static ring_ptr r = make_ring({ring_family::poly_extension, 2, 1, 4, {}});
    return r;
}

ring_ptr f4u2() {
    static ring_ptr r =
        make_ring({ring_family::poly_extension, 2, 2, 2, {1, 1, 1}});
    return r;
}

rpoly P(const ring_ptr& r, std::vector<relem> c) {
    return make_rpoly(r, std::move(c));
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const input_error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("expression parser builds the expected polynomials") {
    rpoly expanded = P(z25(), {1});
    rpoly zm1 = P(z25(), {24, 1});
    for (int k = 0; k < 24; ++k) expanded = mul(expanded, zm1);
    CHECK(parse_poly("(z-1)^24", z25()) == expanded);

    // Integer literals wrap through k * 1_R.
    CHECK(parse_poly("6", z4()) == P(z4(), {2}));
    CHECK(is_zero(parse_poly("4", z4())));

    // A leading minus binds to the next atom only: -z^2 is (-z)^2.
    CHECK(parse_poly("-z^2", z4()) == P(z4(), {0, 0, 1}));
    CHECK(parse_poly("-(z^2)", z4()) == P(z4(), {0, 0, 3}));
    CHECK(parse_poly("5-z^2", z4()) == P(z4(), {1, 0, 3}));

    // Whitespace is free; gamma digits combine.
    CHECK(parse_poly(" g^2 * ( z^3 - 1 ) + g^3 * ( z^2 - 1 ) ", f2u4()) ==
          P(f2u4(), {12, 0, 8, 4}));

    // Unicode aliases for the two generators.
    CHECK(parse_poly("\xce\xb3*z+\xcf\x89", f4u2()) == P(f4u2(), {2, 4}));
}

TEST_CASE("expression parser reports precise errors") {
    std::string e = error_of([] { (void)parse_poly("z^", z4()); });
    CHECK(e.find("offset 2") != std::string::npos);
    CHECK(e.find("expected a number") != std::string::npos);

    e = error_of([] { (void)parse_poly("w+1", z25()); });
    CHECK(e.find("s > 1") != std::string::npos);

    e = error_of([] { (void)parse_poly("z^70000", z4()); });
    CHECK(e.find("degree exceeds") != std::string::npos);

    e = error_of([] { (void)parse_poly("", z4()); });
    CHECK(e.find("empty expression") != std::string::npos);

    e = error_of([] { (void)parse_poly("z 1", z4()); });
    CHECK(e.find("trailing") != std::string::npos);

    e = error_of([] { (void)parse_poly("(z+1", z4()); });
    CHECK(e.find("expected )") != std::string::npos);
}

TEST_CASE("printing and parsing are mutually inverse") {
    std::vector<rpoly> samples = {
        P(z4(), {1, 3, 1}),
        P(z4(), {}),
        P(z25(), {24, 0, 0, 7}),
        P(f2u4(), {15, 6, 1}),
        P(f2u4(), {8, 0, 2}),
        P(f4u2(), {2, 4}),
        P(f4u2(), {7, 0, 5}),
    };
    for (const rpoly& x : samples)
        CHECK(parse_poly(to_string(x), x.ring) == x);

    CHECK(to_string(P(z4(), {1, 3, 1})) == "z^2+3*z+1");
    CHECK(to_string(P(z4(), {})) == "0");
    CHECK(to_string(P(f2u4(), {8, 0, 2})) == "g*z^2+g^3");
    CHECK(to_string(P(f2u4(), {15, 6, 1})) == "z^2+(g+g^2)*z+1+g+g^2+g^3");

    const residue_field& F2 = z4()->field();
    CHECK(to_string(F2, make_fpoly({1, 1})) == "z+1");
    CHECK(to_string(F2, make_fpoly({})) == "0");
}

TEST_CASE("field modulus expressions") {
    CHECK(parse_field_modulus("w^2+w+1", 2) ==
          std::vector<std::uint32_t>{1, 1, 1});
    CHECK(parse_field_modulus("w^2+3", 5) ==
          std::vector<std::uint32_t>{3, 0, 1});
    std::string e = error_of([] { (void)parse_field_modulus("z+1", 2); });
    CHECK(e.find("not allowed in a field modulus") != std::string::npos);
}

TEST_CASE("key=value spec files") {
    code_spec spec = parse_code_spec(
        "# reference shape\n"
        "ring.family = integer-modular\n"
        "ring.p = 5\n"
        "ring.nu = 2\n"
        "n = 25\n"
        "gen = 5\n"
        "gen = (z-1)^24   # two generators\n"
        "distance-method = torsion-search\n"
        "max-enum = 1048576\n");
    CHECK(spec.ring.family == ring_family::integer_modular);
    CHECK(spec.ring.p == 5);
    CHECK(spec.ring.s == 1);
    CHECK(spec.ring.nu == 2);
    CHECK(spec.n == 25);
    REQUIRE(spec.generators.size() == 2);
    CHECK(spec.generators[0] == "5");
    CHECK(spec.generators[1] == "(z-1)^24");
    REQUIRE(spec.method.has_value());
    CHECK(*spec.method == classify_options::mode::torsion_search);
    REQUIRE(spec.max_enum.has_value());
    CHECK(*spec.max_enum == 1048576);

    code_spec galois = parse_code_spec(
        "ring.family = poly-extension\n"
        "ring.p = 2\n"
        "ring.s = 2\n"
        "ring.nu = 2\n"
        "ring.modulus = w^2+w+1\n"
        "n = 3\n"
        "gen = g*z+w\n");
    CHECK(galois.ring.field_modulus == std::vector<std::uint32_t>{1, 1, 1});
    CHECK_FALSE(galois.method.has_value());
    CHECK_FALSE(galois.max_enum.has_value());
}

TEST_CASE("key=value spec errors carry the line number") {
    auto err = [](const std::string& text) {
        return error_of([&] { (void)parse_code_spec(text); });
    };
    CHECK(err("ring.family = integer-modular\nbogus = 1\n")
              .find("line 2: unknown key 'bogus'") != std::string::npos);
    CHECK(err("n = 3\nn = 4\n").find("line 2: duplicate key 'n'") !=
          std::string::npos);
    CHECK(err("n =\n").find("empty value for key 'n'") != std::string::npos);
    CHECK(err("just some words\n").find("expected key = value") !=
          std::string::npos);
    CHECK(err("ring.family = integer-modular\nring.p = 2\ngen = z\n")
              .find("missing key 'n'") != std::string::npos);
    CHECK(err("ring.family = integer-modular\nring.p = 2\nn = 4\n")
              .find("missing key 'gen'") != std::string::npos);
    CHECK(err("ring.family = integer-modular\nring.p = 2\nn = 0\ngen = z\n")
              .find("between 1 and 2^20") != std::string::npos);
    CHECK(err("ring.family = integer-modular\nring.p = 2\nn = 4\ngen = z\n"
              "distance-method = quantum\n")
              .find("unknown distance method") != std::string::npos);
    CHECK(err("").find("empty code spec") != std::string::npos);
}

TEST_CASE("JSON spec mirror") {
    code_spec spec = parse_code_spec(R"({
        "ring": {"family": "poly-extension", "p": 2, "s": 2, "nu": 2,
                 "modulus": "w^2+w+1"},
        "n": 3,
        "generators": ["g*z+w"],
        "max-enum": 1024
    })");
    CHECK(spec.ring.family == ring_family::poly_extension);
    CHECK(spec.ring.s == 2);
    CHECK(spec.ring.field_modulus == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(spec.n == 3);
    REQUIRE(spec.generators.size() == 1);
    CHECK(spec.generators[0] == "g*z+w");
    CHECK(*spec.max_enum == 1024);

    // Modulus can equally be the ascending coefficient array.
    code_spec arr = parse_code_spec(R"({
        "ring": {"family": "poly-extension", "p": 2, "s": 2, "nu": 2,
                 "modulus": [1, 1, 1]},
        "n": 3,
        "generators": ["g*z+w"]
    })");
    CHECK(arr.ring.field_modulus == spec.ring.field_modulus);

    auto err = [](const std::string& text) {
        return error_of([&] { (void)parse_code_spec(text); });
    };
    CHECK(err(R"({"ring": {"family": "integer-modular", "p": 2}, "n": 3,
                  "generators": ["z"], "extra": 1})")
              .find("unknown spec key 'extra'") != std::string::npos);
    CHECK(err(R"({"ring": {"family": "integer-modular", "p": 2}, "n": 3,
                  "generators": []})")
              .find("non-empty array") != std::string::npos);
    CHECK(err("{").find("invalid JSON") != std::string::npos);
}

TEST_CASE("spec files load from disk with path-tagged errors") {
    const std::string path = "/tmp/chaincode_iotest.spec";
    {
        std::ofstream out(path);
        out << "ring.family = integer-modular\nring.p = 2\nring.nu = 2\n"
               "n = 3\ngen = z - 1\n";
    }
    code_spec spec = load_code_spec(path);
    CHECK(spec.ring.p == 2);
    CHECK(spec.generators == std::vector<std::string>{"z - 1"});
    std::remove(path.c_str());

    std::string e =
        error_of([] { (void)load_code_spec("/tmp/does-not-exist.spec"); });
    CHECK(e.find("cannot open input file") != std::string::npos);

    // Errors inside a file are prefixed with its path.
    {
        std::ofstream out(path);
        out << "n = 3\nn = 4\n";
    }
    e = error_of([&] { (void)load_code_spec(path); });
    CHECK(e.find(path) != std::string::npos);
    CHECK(e.find("duplicate key 'n'") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("method names and the budget environment variable") {
    CHECK(parse_method_name("auto") == classify_options::mode::automatic);
    CHECK(parse_method_name("torsion-search") ==
          classify_options::mode::torsion_search);
    CHECK(parse_method_name("exhaustive") ==
          classify_options::mode::exhaustive);
    CHECK(parse_method_name("formula") == classify_options::mode::formula);
    CHECK_THROWS_AS((void)parse_method_name("quantum"), input_error);

    unsetenv("CHAINCODE_MAX_ENUM");
    CHECK_FALSE(env_max_enum().has_value());
    setenv("CHAINCODE_MAX_ENUM", "4096", 1);
    CHECK(env_max_enum() == std::optional<std::uint64_t>(4096));
    setenv("CHAINCODE_MAX_ENUM", "0", 1);
    CHECK_THROWS_AS((void)env_max_enum(), input_error);
    setenv("CHAINCODE_MAX_ENUM", "abc", 1);
    CHECK_THROWS_AS((void)env_max_enum(), input_error);
    unsetenv("CHAINCODE_MAX_ENUM");
}

TEST_CASE("ring display names") {
    CHECK(ring_display(*z25()) == "Z_25");
    CHECK(ring_display(*f2u4()) == "F_2[g]/(g^4)");
    std::string galois = ring_display(*f4u2());
    CHECK(galois.find("F_4[g]/(g^2)") != std::string::npos);
    CHECK(galois.find("w^2+w+1") != std::string::npos);
}

TEST_CASE("powers in decimal with a digit cap") {
    CHECK(pow_decimal(2, 10) == "1024");
    CHECK(pow_decimal(3, 5) == "243");
    CHECK(pow_decimal(5, 0) == "1");
    CHECK(pow_decimal(2, 300).empty());
    CHECK(pow_decimal(10, 60).empty());
}

TEST_CASE("analysis report in text form") {
    code_spec spec;
    spec.ring = {ring_family::poly_extension, 2, 1, 4, {}};
    spec.n = 6;
    spec.generators = {"g^2*(z^3-1)+g^3*(z^2-1)"};
    analyze_options opt;
    opt.threads = 1;
    analysis_report rep = analyze(spec, opt);
    std::string text = render_text(rep);

    CHECK(text.find("ring: F_2[g]/(g^4) (poly-extension, p = 2, s = 1, "
                    "nu = 4, |R| = 16)") != std::string::npos);
    CHECK(text.find("length: n = 6") != std::string::npos);
    CHECK(text.find("(i, t) = (2, 3)") != std::string::npos);
    CHECK(text.find("Tor_0: zero") != std::string::npos);
    CHECK(text.find("Tor_2: <z^3+1>") != std::string::npos);
    CHECK(text.find("cardinality: |C| = 2^6 = 64") != std::string::npos);
    CHECK(text.find("rank: 3") != std::string::npos);
    CHECK(text.find("distance: d = 2 via torsion-search") !=
          std::string::npos);
    CHECK(text.find("mds: no") != std::string::npos);
    CHECK(text.find("mhdr: no") != std::string::npos);
    CHECK(text.find("length criterion: predicts MHDR (advisory, n' = 3, "
                    "r = 1)") != std::string::npos);
    CHECK(text.find("[MISMATCH] mhdr-length-vs-definition") !=
          std::string::npos);
    CHECK(text.find("[ok] distance-methods") != std::string::npos);
    CHECK(text.find("[skip] formula") != std::string::npos);

    // Identical inputs give byte-identical reports.
    analysis_report again = analyze(spec, opt);
    CHECK(render_text(again) == text);
    CHECK(render_json(again) == render_json(rep));
}

TEST_CASE("analysis report in JSON form") {
    code_spec spec;
    spec.ring = {ring_family::poly_extension, 2, 1, 4, {}};
    spec.n = 6;
    spec.generators = {"g^2*(z^3-1)+g^3*(z^2-1)"};
    analyze_options opt;
    opt.threads = 1;
    analysis_report rep = analyze(spec, opt);

    nlohmann::ordered_json j = nlohmann::ordered_json::parse(render_json(rep));
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    CHECK(keys == std::vector<std::string>{
                      "ring", "n", "generators", "canonical", "normal_form",
                      "torsion", "cardinality_exponent", "rank", "distance",
                      "mds", "mhdr", "flags"});

    CHECK(j["ring"]["display"] == "F_2[g]/(g^4)");
    CHECK(j["n"] == 6);
    REQUIRE(j["generators"].size() == 1);
    CHECK(j["generators"][0] == "g^2*z^3+g^3*z^2+g^2+g^3");
    REQUIRE(j["canonical"].size() == 1);
    CHECK(j["canonical"][0]["i"] == 2);
    CHECK(j["canonical"][0]["t"] == 3);
    REQUIRE(j["torsion"].size() == 4);
    CHECK(j["torsion"][0]["zero"] == true);
    CHECK(j["torsion"][2]["generator"] == "z^3+1");
    CHECK(j["cardinality_exponent"] == 6);
    CHECK(j["rank"] == 3);
    CHECK(j["distance"]["value"] == 2);
    CHECK(j["distance"]["method"] == "torsion-search");
    CHECK(j["distance"]["exhaustive"] == 2);
    CHECK(j["mds"]["verdict"] == false);
    CHECK(j["mhdr"]["verdict"] == false);
    CHECK(j["mhdr"]["length_criterion"]["predicts_mhdr"] == true);
    CHECK(j["mhdr"]["length_criterion"]["applicable"] == false);

    bool saw_mismatch = false;
    for (const auto& f : j["flags"]) {
        if (f["kind"] == "mismatch") {
            CHECK(f["check"] == "mhdr-length-vs-definition");
            saw_mismatch = true;
        }
    }
    CHECK(saw_mismatch);
}

TEST_CASE("zero code report degrades cleanly") {
    code_spec spec;
    spec.ring = {ring_family::integer_modular, 2, 1, 2, {}};
    spec.n = 4;
    spec.generators = {"0"};
    analysis_report rep = analyze(spec, {});
    std::string text = render_text(rep);
    CHECK(text.find("zero code") != std::string::npos);
    CHECK(text.find("cardinality: |C| = 1 (p^0)") != std::string::npos);

    nlohmann::ordered_json j = nlohmann::ordered_json::parse(render_json(rep));
    CHECK(j["canonical"].empty());
    CHECK(j["normal_form"].empty());
    CHECK(j["distance"].is_null());
    CHECK(j["mds"].is_null());
    CHECK(j["mhdr"].is_null());
    CHECK(j["rank"] == 0);
}

TEST_CASE("reference corpus selection") {
    CHECK(select_examples("all").size() == 5);
    auto one = select_examples("4.2");
    REQUIRE(one.size() == 1);
    CHECK(one[0]->id == "4.2");
    CHECK_THROWS_AS((void)select_examples("bogus"), input_error);
    CHECK_THROWS_AS((void)select_examples(""), input_error);
}

TEST_CASE("reference examples replay against their records") {
    const auto& corpus = reference_corpus();

    // 4.1: every recorded quantity reproduces as-is.
    verify_result r1 = verify_example(*select_examples("4.1")[0], 1);
    CHECK(r1.ok);
    for (const verify_entry& e : r1.entries)
        CHECK(e.status == entry_status::agree);
    CHECK(render_verify(r1).find("result: ok") != std::string::npos);
    CHECK(render_verify(r1).find("divergence") == std::string::npos);

    // 4.2: the record assumed a free rank-1 code; all five quantities
    // diverge to their certified corrections.
    verify_result r2 = verify_example(*select_examples("4.2")[0], 1);
    CHECK(r2.ok);
    REQUIRE(r2.entries.size() == 5);
    for (const verify_entry& e : r2.entries)
        CHECK(e.status == entry_status::expected_divergence);
    CHECK(r2.entries[0].computed == "(1, 5), (0, 24)");
    CHECK(render_verify(r2).find("(5 expected divergences)") !=
          std::string::npos);

    // 4.3: four corrections, but the MHDR verdict survives.
    verify_result r3 = verify_example(*select_examples("4.3")[0], 1);
    CHECK(r3.ok);
    REQUIRE(r3.entries.size() == 5);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(r3.entries[k].status == entry_status::expected_divergence);
    CHECK(r3.entries[4].quantity == "MHDR");
    CHECK(r3.entries[4].status == entry_status::agree);
    CHECK(render_verify(r3).find("(4 expected divergences)") !=
          std::string::npos);

    // 4.4 agrees wholesale.
    verify_result r4 = verify_example(*select_examples("4.4")[0], 1);
    CHECK(r4.ok);
    for (const verify_entry& e : r4.entries)
        CHECK(e.status == entry_status::agree);

    CHECK(corpus.size() == 5);
}

TEST_CASE("randomized property harness is deterministic") {
    random_check_report a = run_random_checks(42, 12, 6);
    random_check_report b = run_random_checks(42, 12, 6);
    CHECK(a.ok());
    CHECK(render_random_check(a) == render_random_check(b));
    REQUIRE(a.properties.size() == 13);
    CHECK(a.properties[0].name == "construction");
    CHECK(a.properties[0].passed == 12);

    random_check_report empty = run_random_checks(1, 0, 6);
    CHECK(empty.ok());
    for (const property_result& p : empty.properties) {
        CHECK(p.passed == 0);
        CHECK(p.failed == 0);
    }
}
