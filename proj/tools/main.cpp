// partsum: prime-weighted integral-part sums.
//
//   partsum --fn rho eval --x 1000000 --kind psi --strategy both
//   partsum --fn upsilon constants
//   partsum verify --suite all --budget 300
//   partsum --fn upsilon scan --kind psi --from 1e4 --to 1e8 --points 5 --out scan.csv
//
// Exit codes: 0 success, 2 usage/capacity/configuration, 3 verification or
// cross-check failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "partsum/asymptotics.hpp"
#include "partsum/errors.hpp"
#include "partsum/floorsum.hpp"
#include "partsum/hyperbola.hpp"
#include "partsum/parallel.hpp"
#include "partsum/scan.hpp"
#include "partsum/verify.hpp"

using namespace partsum;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_verify = 3;

struct GlobalOpts {
    std::string fn = "rho";
    int k = -1;  // -1: preset default
    unsigned threads = 0;
    uint64_t seed = 12345;
    double l_bound = -1.0;             // custom specs only
    std::string majorant;              // "c,a" for custom tail bounds
};

FnSpec make_spec(const GlobalOpts& g) {
    FnSpec spec;
    if (g.fn == "upsilon") spec = FnSpec::upsilon();
    else if (g.fn == "vartheta") spec = FnSpec::vartheta();
    else if (g.fn == "rho") spec = FnSpec::rho();
    else if (g.fn.rfind("custom:", 0) == 0) {
        auto table = load_custom_table(g.fn.substr(7));
        spec = FnSpec::custom(std::move(table), g.k < 0 ? 1 : (unsigned)g.k);
        if (g.l_bound >= 0.0) spec.L_bound = g.l_bound;
        if (!g.majorant.empty()) {
            auto comma = g.majorant.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--majorant wants 'c,a' meaning |g(n)| <= c n^a");
            spec.g_majorant = {std::stod(g.majorant.substr(0, comma)),
                               std::stod(g.majorant.substr(comma + 1))};
        }
        return spec;
    } else {
        throw std::invalid_argument("--fn must be upsilon|vartheta|rho|custom:PATH");
    }
    if (g.k >= 0 && (unsigned)g.k != spec.k)
        throw std::invalid_argument("--k contradicts the preset (fixed k for " + g.fn + " is " +
                                    std::to_string(spec.k) + ")");
    return spec;
}

int cmd_constants(const FnSpec& spec, double epsilon) {
    std::printf("function %s: f = g * id^%u\n", spec.label().c_str(), spec.k + 1);
    ConstantEstimate c = constant_cfk(spec, epsilon);
    std::printf("C_{f,k} = %.15Lf  (truncated at N=%llu, certified tail <= %.3Le)\n", c.value,
                (unsigned long long)c.truncation_n, c.tail_bound);
    if (c.closed_form) {
        long double oracle = 0.0L;
        if (*c.closed_form == "zeta(2)*zeta(3)") oracle = zeta_oracle(2.0L) * zeta_oracle(3.0L);
        if (*c.closed_form == "zeta(3)/zeta(4)") oracle = zeta_oracle(3.0L) / zeta_oracle(4.0L);
        if (*c.closed_form == "zeta(2)/zeta(3)") oracle = zeta_oracle(2.0L) / zeta_oracle(3.0L);
        std::printf("oracle %s = %.15Lf, residual = %.3Le\n", c.closed_form->c_str(), oracle,
                    std::fabs(oracle - c.value));
    }
    try {
        ConstantEstimate h = constant_hgk(spec);
        std::printf("H_{g,k} = %.15Lf  (%s)\n", h.value,
                    h.closed_form ? h.closed_form->c_str() : "numeric");
    } catch (const std::invalid_argument&) {
        ConstantEstimate h = fit_hgk(spec, std::min<uint64_t>(
                                               spec.custom_g ? spec.custom_g->size() : 100000,
                                               100000));
        std::printf("H_{g,k} ~= %.15Lf  (numeric fit over n <= %llu, worst residual %.3Le)\n",
                    h.value, (unsigned long long)h.truncation_n, h.tail_bound);
    }
    return exit_ok;
}

int cmd_eval(const FnSpec& spec, uint64_t x, const std::string& kind,
             const std::string& strategy, bool exact) {
    const bool want_psi = (kind == "psi");
    auto run = [&](const std::string& strat) {
        if (strat == "brute")
            return want_psi ? psi_fk_brute(spec, x, exact) : pi_fk_brute(spec, x, exact);
        return want_psi ? psi_fk_blocked(spec, x, exact) : pi_fk_blocked(spec, x, exact);
    };
    if (strategy == "both") {
        SumResult a = run("brute");
        SumResult b = run("blocked");
        std::printf("%s_{f,%u}(%llu) brute   = %.17Lg\n", kind.c_str(), spec.k,
                    (unsigned long long)x, a.value);
        std::printf("%s_{f,%u}(%llu) blocked = %.17Lg\n", kind.c_str(), spec.k,
                    (unsigned long long)x, b.value);
        long double denom = std::max({std::fabs(a.value), std::fabs(b.value), 1e-30L});
        long double rel = std::fabs(a.value - b.value) / denom;
        bool exact_same = true;
        if (exact) {
            if (want_psi) exact_same = (*a.log_form == *b.log_form);
            else exact_same = (cmp(*a.rational_form, *b.rational_form) == 0);
            std::printf("exact forms %s\n", exact_same ? "identical" : "DIFFER");
        }
        std::printf("relative discrepancy = %.3Le\n", rel);
        if (rel > 1e-9L || !exact_same) {
            std::fprintf(stderr, "cross-strategy discrepancy above 1e-9\n");
            return exit_verify;
        }
        return exit_ok;
    }
    SumResult r = run(strategy);
    std::printf("%s_{f,%u}(%llu) %s = %.17Lg\n", kind.c_str(), spec.k, (unsigned long long)x,
                strategy.c_str(), r.value);
    if (exact && r.rational_form)
        std::printf("exact = %s\n", Rational(*r.rational_form).get_str().c_str());
    if (exact && r.log_form) {
        std::printf("exact = sum over %zu primes of c_p log p\n", r.log_form->coeff.size());
        if (r.log_form->coeff.size() <= 12)
            for (const auto& [p, c] : r.log_form->coeff)
                std::printf("  c_%llu = %s\n", (unsigned long long)p, c.get_str().c_str());
    }
    return exit_ok;
}

int cmd_verify(const std::string& suite, double budget, uint64_t seed) {
    auto results = run_suites(suite, budget, seed);
    bool all_pass = true;
    for (const SuiteResult& r : results) {
        std::printf("%s\n", r.summary_line().c_str());
        all_pass = all_pass && r.passed;
    }
    return all_pass ? exit_ok : exit_verify;
}

int cmd_scan(const FnSpec& spec, const std::string& kind, double from, double to,
             unsigned points, const std::string& zrule, double a_param,
             const std::string& out_path) {
    ScanRequest req;
    req.spec = spec;
    req.kind = (kind == "psi") ? SumKind::psi : SumKind::pi;
    req.xs = geometric_grid(from, to, points);
    req.z_rule = ZRule::parse(zrule);
    req.a_param = a_param;
    auto rows = run_scan(req);
    if (out_path.empty() || out_path == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        write_csv(out, rows);
        std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime-weighted integral-part sums: evaluators, exact identities, "
                 "asymptotic constants and convergence scans"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--fn", g.fn, "arithmetic function: upsilon|vartheta|rho|custom:PATH");
    app.add_option("--k", g.k, "k for custom functions (presets fix their own)");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
    app.add_option("--seed", g.seed, "seed for randomized suites");
    app.add_option("--L", g.l_bound, "L with 0 <= f(n) <= L n^{k+1} (custom specs)");
    app.add_option("--majorant", g.majorant, "c,a with |g(n)| <= c n^a (custom specs)");

    auto* constants = app.add_subcommand("constants", "compute C_{f,k} and H_{g,k}");
    double epsilon = 1e-9;
    constants->add_option("--epsilon", epsilon, "certified tail bound target");

    auto* eval = app.add_subcommand("eval", "evaluate psi_{f,k}(x) or pi_{f,k}(x)");
    uint64_t x = 0;
    std::string kind = "psi", strategy = "blocked";
    bool exact = false;
    eval->add_option("--x", x, "evaluation point")->required();
    eval->add_option("--kind", kind, "psi|pi")->check(CLI::IsMember({"psi", "pi"}));
    eval->add_option("--strategy", strategy, "brute|blocked|both")
        ->check(CLI::IsMember({"brute", "blocked", "both"}));
    eval->add_flag("--exact", exact, "exact symbolic accumulation (small x)");

    auto* verify = app.add_subcommand("verify", "run invariant suites");
    std::string suite = "all";
    double budget = 300.0;
    verify->add_option("--suite", suite, "hyperbola|vaaler|inversion|oracle|all");
    verify->add_option("--budget", budget, "time budget in seconds");

    auto* scan = app.add_subcommand("scan", "convergence scan to CSV");
    double from = 1e4, to = 1e6, a_param = 1.0;
    unsigned points = 3;
    std::string zrule = "logpow:10", out_path, scan_kind = "psi";
    scan->add_option("--kind", scan_kind, "psi|pi")->check(CLI::IsMember({"psi", "pi"}));
    scan->add_option("--from", from, "smallest x");
    scan->add_option("--to", to, "largest x");
    scan->add_option("--points", points, "grid points (geometric)");
    scan->add_option("--z", zrule, "z rule: logpow:B or fixed:v");
    scan->add_option("--A", a_param, "A parameter of the envelope");
    scan->add_option("--out", out_path, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    set_thread_count(g.threads);
    try {
        if (*constants) return cmd_constants(make_spec(g), epsilon);
        if (*eval) return cmd_eval(make_spec(g), x, kind, strategy, exact);
        if (*verify) return cmd_verify(suite, budget, g.seed);
        if (*scan) return cmd_scan(make_spec(g), scan_kind, from, to, points, zrule, a_param,
                                   out_path);
    } catch (const capacity_error& e) {
        std::fprintf(stderr, "capacity: %s\n", e.what());
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const std::logic_error& e) {
        // identity/bound violations surface as plain logic errors
        std::fprintf(stderr, "verification failure: %s\n", e.what());
        return exit_verify;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
    return exit_usage;
}
