#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chaincode/corpus.hpp"
#include "chaincode/errors.hpp"
#include "chaincode/parse.hpp"
#include "chaincode/random_check.hpp"
#include "chaincode/report.hpp"

namespace {

using namespace chaincode;

struct analyze_args {
    std::string input;
    std::string format = "text";
    std::string method;
    std::uint64_t max_enum = 0;
    bool max_enum_given = false;
    std::uint32_t threads = 0;
};

int run_analyze(const analyze_args& a) {
    code_spec spec = load_code_spec(a.input);
    analyze_options opt;
    if (!a.method.empty()) opt.method = parse_method_name(a.method);
    if (a.max_enum_given) {
        if (a.max_enum == 0)
            throw input_error("--max-enum must be positive");
        opt.max_enum = a.max_enum;
    }
    opt.threads = a.threads;
    analysis_report rep = analyze(spec, opt);
    std::cout << (a.format == "json" ? render_json(rep) : render_text(rep));
    return exit_ok;
}

int run_verify(const std::string& selector, std::uint32_t threads) {
    bool all_ok = true;
    for (const corpus_example* ex : select_examples(selector)) {
        verify_result r = verify_example(*ex, threads);
        std::cout << render_verify(r);
        all_ok = all_ok && r.ok;
    }
    std::cout << (all_ok ? "verify-paper: OK\n" : "verify-paper: MISMATCH\n");
    return all_ok ? exit_ok : exit_input;
}

int run_random(std::uint64_t seed, std::uint32_t trials,
               std::uint32_t max_n) {
    random_check_report rep = run_random_checks(seed, trials, max_n);
    std::cout << render_random_check(rep);
    // A failed property means the implementation broke one of its own
    // theorems, which is an internal defect, not an input problem.
    return rep.ok() ? exit_ok : exit_internal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclic codes over finite chain rings: canonical "
                 "generators, torsion tower, distance, MDS/MHDR"};
    app.require_subcommand(1);

    analyze_args aa;
    CLI::App* an =
        app.add_subcommand("analyze", "analyze a code spec file");
    an->add_option("--input", aa.input, "code spec file (key=value or JSON)")
        ->required();
    an->add_option("--format", aa.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    an->add_option("--distance-method", aa.method,
                   "auto, torsion-search, exhaustive, or formula");
    an->add_option("--max-enum", aa.max_enum,
                   "enumeration budget (overrides file and environment)");
    an->add_option("--threads", aa.threads,
                   "distance-search workers (0 = hardware)");

    std::string selector = "all";
    std::uint32_t vp_threads = 0;
    CLI::App* vp = app.add_subcommand(
        "verify-paper",
        "recompute the bundled reference examples against their recorded "
        "expectations");
    vp->add_option("--example", selector, "4.1 .. 4.5, or all");
    vp->add_option("--threads", vp_threads,
                   "distance-search workers (0 = hardware)");

    std::uint64_t seed = 1;
    std::uint32_t trials = 200, max_n = 6;
    CLI::App* rc = app.add_subcommand(
        "random-check", "run the randomized property suite");
    rc->add_option("--seed", seed, "RNG seed");
    rc->add_option("--trials", trials, "number of random codes");
    rc->add_option("--max-n", max_n, "largest code length to draw")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc_code = app.exit(e);
        return rc_code == 0 ? exit_ok : exit_input;
    }

    try {
        aa.max_enum_given = an->count("--max-enum") > 0;
        if (an->parsed()) return run_analyze(aa);
        if (vp->parsed()) return run_verify(selector, vp_threads);
        return run_random(seed, trials, max_n);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}
