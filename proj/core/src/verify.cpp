#include "partsum/verify.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "partsum/floorsum.hpp"
#include "partsum/hyperbola.hpp"
#include "partsum/vaaler.hpp"

namespace partsum {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Deterministic across platforms, unlike <random> distributions.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double unit() { return (double)(next() >> 11) * 0x1p-53; }
    uint64_t below(uint64_t n) { return next() % n; }
};

std::vector<FnSpec> preset_specs() {
    return {FnSpec::upsilon(), FnSpec::vartheta(), FnSpec::rho()};
}

struct SuiteRun {
    SuiteResult res;
    Clock::time_point t0 = Clock::now();
    double budget;

    explicit SuiteRun(std::string name, double budget_s) : budget(budget_s) {
        res.name = std::move(name);
    }
    bool out_of_time() const { return seconds_since(t0) > budget; }
    void check(bool ok, const std::string& what) {
        ++res.checks;
        if (!ok) {
            ++res.failures;
            if (res.detail.empty()) res.detail = what;
        }
    }
    SuiteResult finish() {
        res.elapsed_s = seconds_since(t0);
        res.passed = (res.failures == 0);
        if (res.skipped > 0 && res.detail.empty()) res.detail = "budget exhausted";
        return res;
    }
};

}  // namespace

std::string SuiteResult::summary_line() const {
    std::ostringstream os;
    os << "suite=" << name << " status=" << (passed ? "pass" : "fail") << " checks=" << checks
       << " failures=" << failures << " skipped=" << skipped
       << " elapsed_ms=" << (int64_t)(elapsed_s * 1000.0)
       << " detail=" << (detail.empty() ? "-" : detail);
    return os.str();
}

SuiteResult run_suite_hyperbola(double budget_s) {
    SuiteRun run("hyperbola", budget_s);
    const uint64_t x_max = 600;
    for (const FnSpec& spec : preset_specs()) {
        HyperbolaEngine engine(spec, x_max);
        for (uint64_t x = 1; x <= x_max; ++x) {
            if (run.out_of_time()) {
                run.res.skipped += (x_max - x + 1) * 4;
                break;
            }
            double zs[4] = {1.0, 2.0, std::floor(std::pow((double)x, 0.25)),
                            std::floor(std::cbrt((double)x))};
            for (double z : zs) {
                if (z < 1.0 || z * z * z > (double)x + 1e-9) continue;
                try {
                    engine.verify(x, z);  // throws on identity violation
                    run.check(true, "");
                } catch (const std::exception& e) {
                    run.check(false, e.what());
                }
            }
        }
    }
    return run.finish();
}

SuiteResult run_suite_vaaler(double budget_s, uint64_t seed) {
    SuiteRun run("vaaler", budget_s);
    const unsigned ladder[] = {1, 4, 16, 64, 256};
    SplitMix64 rng(seed);
    const size_t samples = 100000;
    for (size_t i = 0; i < samples; ++i) {
        if (run.out_of_time()) {
            run.res.skipped += samples - i;
            break;
        }
        long double t = (long double)rng.unit();
        if (t < 1e-9L) continue;
        for (unsigned h : ladder) {
            long double rem = sawtooth(t) - vaaler_approx(t, h);
            run.check(std::fabs(rem) <= fejer_bound(t, h) + 1e-12L,
                      "bound violated at t=" + std::to_string((double)t) +
                          " H=" + std::to_string(h));
        }
    }
    // closed form vs direct kernel
    SplitMix64 rng2(seed ^ 0xabcdefULL);
    for (size_t i = 0; i < 2000 && !run.out_of_time(); ++i) {
        long double t = (long double)rng2.unit();
        for (unsigned h : ladder)
            run.check(std::fabs(fejer_bound(t, h) - fejer_bound_direct(t, h)) <= 1e-12L,
                      "fejer closed form mismatch at t=" + std::to_string((double)t));
    }
    return run.finish();
}

SuiteResult run_suite_inversion(double budget_s) {
    SuiteRun run("inversion", budget_s);
    const uint64_t n = 20000;
    SieveTable sieve(n);
    for (const FnSpec& spec : preset_specs()) {
        if (run.out_of_time()) {
            run.res.skipped += 1;
            continue;
        }
        ArithFnTable f = build_f_from_spec(spec, n);
        ArithFnTable g = invert_to_g(f, spec.k, sieve);
        ArithFnTable expect = tabulate_g(spec, n, sieve);
        bool same = true;
        for (uint64_t i = 1; i <= n && same; ++i) same = (g(i) == expect(i));
        run.check(same, "round-trip mismatch for " + spec.label());
    }
    return run.finish();
}

SuiteResult run_suite_oracle(double budget_s, uint64_t seed) {
    SuiteRun run("oracle", budget_s);
    for (const FnSpec& spec : preset_specs()) {
        for (uint64_t x = 1; x <= 400; ++x) {
            if (run.out_of_time()) {
                run.res.skipped += 401 - x;
                break;
            }
            SumResult pb = psi_fk_brute(spec, x, true);
            SumResult pl = psi_fk_blocked(spec, x, true);
            run.check(*pb.log_form == *pl.log_form,
                      "psi exact mismatch " + spec.label() + " x=" + std::to_string(x));
            SumResult ib = pi_fk_brute(spec, x, true);
            SumResult il = pi_fk_blocked(spec, x, true);
            run.check(cmp(*ib.rational_form, *il.rational_form) == 0,
                      "pi exact mismatch " + spec.label() + " x=" + std::to_string(x));
        }
        SplitMix64 rng(seed);
        for (int i = 0; i < 4 && !run.out_of_time(); ++i) {
            uint64_t x = 1000 + rng.below(99001);
            SumResult b = psi_fk_brute(spec, x, false);
            SumResult l = psi_fk_blocked(spec, x, false);
            run.check(std::fabs(b.value - l.value) <= 1e-9L * std::fabs(b.value),
                      "psi float mismatch " + spec.label() + " x=" + std::to_string(x));
            SumResult bp = pi_fk_brute(spec, x, false);
            SumResult lp = pi_fk_blocked(spec, x, false);
            run.check(std::fabs(bp.value - lp.value) <= 1e-9L * std::fabs(bp.value),
                      "pi float mismatch " + spec.label() + " x=" + std::to_string(x));
        }
    }
    return run.finish();
}

std::vector<SuiteResult> run_suites(const std::string& which, double budget_s, uint64_t seed) {
    std::vector<SuiteResult> out;
    if (which == "all") {
        double each = budget_s / 4.0;
        out.push_back(run_suite_hyperbola(each));
        out.push_back(run_suite_vaaler(each, seed));
        out.push_back(run_suite_inversion(each));
        out.push_back(run_suite_oracle(each, seed));
        return out;
    }
    if (which == "hyperbola") out.push_back(run_suite_hyperbola(budget_s));
    else if (which == "vaaler") out.push_back(run_suite_vaaler(budget_s, seed));
    else if (which == "inversion") out.push_back(run_suite_inversion(budget_s));
    else if (which == "oracle") out.push_back(run_suite_oracle(budget_s, seed));
    else throw std::invalid_argument("unknown suite '" + which + "'");
    return out;
}

}  // namespace partsum
