#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "partsum/asymptotics.hpp"
#include "partsum/errors.hpp"
#include "partsum/numeric.hpp"

using namespace partsum;

namespace {
constexpr long double pi_v = 3.14159265358979323846264338327950288L;
}

TEST_CASE("zeta oracle against closed forms") {
    CHECK(std::fabs(zeta_oracle(2.0L) - pi_v * pi_v / 6.0L) < 1e-15L);
    CHECK(std::fabs(zeta_oracle(4.0L) - pi_v * pi_v * pi_v * pi_v / 90.0L) < 1e-15L);
    CHECK_THROWS_AS(zeta_oracle(1.5L), std::domain_error);
}

TEST_CASE("zeta(3) sits inside a direct-summation enclosure") {
    // independent route: partial sum plus integral sandwich on the tail
    const uint64_t m = 100000;
    NeumaierSum s;
    for (uint64_t n = 1; n <= m; ++n) s.add(1.0L / powi((long double)n, 3));
    long double lo = s.value() + 1.0L / (2.0L * (long double)(m + 1) * (long double)(m + 1));
    long double hi = s.value() + 1.0L / (2.0L * (long double)m * (long double)m);
    long double z3 = zeta_oracle(3.0L);
    CHECK(z3 >= lo - 1e-15L);
    CHECK(z3 <= hi + 1e-15L);
    CHECK(std::fabs(z3 - 1.2020569031595943L) < 1e-13L);
}

TEST_CASE("certified truncations land within their tail bounds") {
    struct Case {
        FnSpec spec;
        long double reference;
    };
    const Case cases[] = {
        {FnSpec::upsilon(), zeta_oracle(2.0L) * zeta_oracle(3.0L)},
        {FnSpec::vartheta(), zeta_oracle(3.0L) / zeta_oracle(4.0L)},
        {FnSpec::rho(), zeta_oracle(2.0L) / zeta_oracle(3.0L)},
    };
    for (const auto& c : cases) {
        ConstantEstimate est = constant_cfk(c.spec, 1e-5);
        CHECK(est.tail_bound <= 1e-5L);
        CHECK(std::fabs(est.value - c.reference) <= est.tail_bound);
        // tail-bound soundness: doubling the truncation moves the value by
        // no more than the certified bound
        long double at2n = cfk_truncated_sum(c.spec, 2 * est.truncation_n);
        CHECK(std::fabs(at2n - est.value) <= est.tail_bound);
        CHECK(est.closed_form.has_value());
    }
}

TEST_CASE("mu series: C = 1/zeta(3) for g = mu, k = 1") {
    FnSpec spec;
    spec.g_kind = GKind::mu;
    spec.k = 1;
    ConstantEstimate est = constant_cfk(spec, 1e-8);
    CHECK(std::fabs(est.value - 1.0L / zeta_oracle(3.0L)) <= est.tail_bound + 1e-12L);
}

TEST_CASE("custom tables need a majorant and enough entries") {
    std::vector<Int128> ones(200, 1);
    FnSpec spec = FnSpec::custom(ones, 1);
    CHECK_THROWS_AS(constant_cfk(spec, 1e-4), std::invalid_argument);

    spec.g_majorant = {1.0, 0.0};  // |g(n)| <= 1
    ConstantEstimate est = constant_cfk(spec, 1e-4);  // truncates at N = 71
    CHECK(std::fabs(est.value - zeta_oracle(3.0L)) <= est.tail_bound);

    CHECK_THROWS_AS(constant_cfk(spec, 1e-9), capacity_error);  // table too short

    spec.g_majorant = {1.0, 3.0};  // a >= k+1: not summable by this majorant
    CHECK_THROWS_AS(constant_cfk(spec, 1e-4), std::domain_error);

    FnSpec s0 = FnSpec::upsilon();
    s0.k = 0;  // sum sigma(n)/n^2 diverges
    CHECK_THROWS_AS(constant_cfk(s0, 1e-4), std::domain_error);
}

TEST_CASE("H_{g,k} closed forms") {
    CHECK(std::fabs(constant_hgk(FnSpec::upsilon()).value - pi_v * pi_v / 6.0L) < 1e-18L);
    CHECK(constant_hgk(FnSpec::vartheta()).value == 0.0L);
    CHECK(std::fabs(constant_hgk(FnSpec::rho()).value - 6.0L / (pi_v * pi_v)) < 1e-18L);
    std::vector<Int128> ones(10, 1);
    CHECK_THROWS_AS(constant_hgk(FnSpec::custom(ones, 1)), std::invalid_argument);
}

TEST_CASE("numeric H fit tracks the closed form") {
    ConstantEstimate fit = fit_hgk(FnSpec::upsilon(), 200000);
    CHECK(std::fabs(fit.value - pi_v * pi_v / 6.0L) < 5e-3L);
}

TEST_CASE("main term") {
    const long double e_v = 2.71828182845904523536L;
    long double c = cfk_reference(FnSpec::upsilon());
    CHECK(std::fabs(c - 1.9773043502972961L) < 1e-12L);
    CHECK(std::fabs(main_term_psi(FnSpec::upsilon(), e_v) - c * e_v) < 1e-12L);
    CHECK(main_term_psi(FnSpec::rho(), 3.0L) > 0.0L);
    CHECK_THROWS_AS(main_term_psi(FnSpec::rho(), 1.0L), std::domain_error);
}

TEST_CASE("envelopes") {
    FnSpec ups = FnSpec::upsilon();
    long double x = 1e8L;
    long double z = std::pow(std::log(x), 10.0L);
    bool violated = false;
    long double e1 = envelope_psi(ups, x, z, 1.0, &violated);
    CHECK(std::isfinite((double)e1));
    CHECK(e1 > 0.0L);
    CHECK(violated);  // the window (log x)^10 <= z <= x^{1/12} is empty at desk scale

    auto terms = envelope_psi_terms(ups, x, z, 1.0);
    CHECK(std::fabs((terms[0] + terms[1] + terms[2] + terms[3]) - e1) < 1e-9L * e1);
    // leading term is (log x)^{2/3} (loglog x)^{1/3} r1(x)
    long double lx = std::log(x);
    long double t0 = std::pow(lx, 2.0L / 3.0L) * std::pow(std::log(lx), 1.0L / 3.0L) *
                     std::pow(std::log(lx), 2.0L);
    CHECK(std::fabs(terms[0] - t0) < 1e-9L * t0);

    // non-increasing in A: only the third term depends on it
    CHECK(envelope_psi(ups, x, z, 1.0) >= envelope_psi(ups, x, z, 2.0));
    CHECK(envelope_psi(ups, x, z, 2.0) >= envelope_psi(ups, x, z, 4.0));

    // pi envelope leads with logloglog x
    auto pt = envelope_pi_terms(FnSpec::rho(), x, z, 1.0);
    CHECK(std::fabs(pt[0] - std::log(std::log(std::log(x)))) < 1e-12L);
    CHECK(std::fabs(pt[0] - 1.06946L) < 1e-3L);
    CHECK_THROWS_AS(envelope_pi(FnSpec::rho(), 10.0L, 2.0L, 1.0), std::domain_error);
    CHECK_THROWS_AS(envelope_psi(ups, x, z, 0.5), std::domain_error);
}

TEST_CASE("pi sandwich") {
    auto [lo, hi] = sandwich_pi(FnSpec::rho(), 1e6L);
    long double scale = 1e6L * std::log(std::log(1e6L));
    CHECK(std::fabs(lo / scale - 0.45614425920673529L) < 1e-9L);
    CHECK(std::fabs(hi / scale - 1.1228109258734020L) < 1e-9L);
    CHECK(lo < hi);

    // L = 0 degenerates to equal bounds
    std::vector<Int128> ones(10, 1);
    FnSpec degenerate = FnSpec::custom(ones, 1);
    degenerate.L_bound = 0.0;
    degenerate.g_majorant = {1.0, 0.0};
    auto [dlo, dhi] = sandwich_pi(degenerate, 100.0L);
    CHECK(dlo == dhi);

    CHECK_THROWS_AS(sandwich_pi(FnSpec::upsilon(), 1e6L), std::invalid_argument);
    const long double e2 = 7.389056098930650L;
    auto [plo, phi_] = sandwich_pi(FnSpec::rho(), e2);
    CHECK(plo > 0.0L);
    CHECK(phi_ > plo);
}

TEST_CASE("N0 threshold") {
    // frozen from an independent high-precision evaluation
    long double n0 = n0_threshold(1e8L, 10.0);
    CHECK(std::fabs(n0 / 1.835895368942454e43L - 1.0L) < 1e-10L);
    CHECK(std::fabs(n0_threshold(100.0L, 1e-12) - 1.0L) < 1e-9L);
    CHECK(min_b_for(1.0) == 10.0);
    CHECK(min_b_for(2.5) == 13.0);
    CHECK_THROWS_AS(n0_threshold(9.0L, 10.0), std::domain_error);
    CHECK_THROWS_AS(n0_threshold(100.0L, 0.0), std::domain_error);
}

TEST_CASE("predictions") {
    Prediction p = predict_psi(FnSpec::upsilon(), 1e6L, 100.0, 1.0);
    CHECK(p.kind == PredictionKind::psi_main);
    CHECK(p.envelope >= 0.0L);
    CHECK(p.main == doctest::Approx((double)main_term_psi(FnSpec::upsilon(), 1e6L)));

    Prediction q = predict_pi(FnSpec::rho(), 1e6L, 100.0, 1.0);
    CHECK(q.kind == PredictionKind::pi_sandwich);
    auto [lo, hi] = sandwich_pi(FnSpec::rho(), 1e6L);
    CHECK((double)q.main == doctest::Approx((double)lo));
    CHECK(lo <= hi);
}
