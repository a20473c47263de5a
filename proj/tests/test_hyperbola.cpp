#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "partsum/floorsum.hpp"
#include "partsum/hyperbola.hpp"
#include "partsum/numeric.hpp"
#include "partsum/vaaler.hpp"

using namespace partsum;

TEST_CASE("z = 1 collapse: S2 equals S3") {
    STerms st = s_terms(FnSpec::rho(), 10, 1.0);
    CHECK(cmp(st.s2, st.s3) == 0);
    Rational lhs = st.s1 + st.s2 - st.s3;
    CHECK(cmp(lhs, prefix_fk_exact(FnSpec::rho(), 10)) == 0);
}

TEST_CASE("identity examples") {
    STerms st = s_terms(FnSpec::rho(), 10, 2.0);
    CHECK(cmp(st.s1 + st.s2 - st.s3, prefix_fk_exact(FnSpec::rho(), 10)) == 0);

    STerms su = s_terms(FnSpec::upsilon(), 100, 4.0);
    CHECK(cmp(su.s1 + su.s2 - su.s3, prefix_fk_exact(FnSpec::upsilon(), 100)) == 0);

    STerms sv = s_terms(FnSpec::vartheta(), 50, 3.0);
    CHECK(cmp(sv.s1 + sv.s2 - sv.s3, prefix_fk_exact(FnSpec::vartheta(), 50)) == 0);

    HyperbolaReport rep = verify_identity(FnSpec::rho(), 1, 1.0);
    CHECK(cmp(rep.lhs, Rational(1)) == 0);
}

TEST_CASE("identity sweep with the engine") {
    for (const FnSpec& spec : {FnSpec::upsilon(), FnSpec::vartheta(), FnSpec::rho()}) {
        HyperbolaEngine engine(spec, 200);
        for (uint64_t x = 1; x <= 200; ++x) {
            double zs[] = {1.0, 2.0, std::floor(std::pow((double)x, 0.25)),
                           std::floor(std::cbrt((double)x))};
            for (double z : zs) {
                if (z < 1.0 || z * z * z > (double)x + 1e-9) continue;
                HyperbolaReport rep = engine.verify(x, z);  // throws if violated
                CHECK(cmp(rep.s1 + rep.s2 - rep.s3, rep.lhs) == 0);
                CHECK(std::isfinite((double)rep.residual));
            }
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(s_terms(FnSpec::rho(), 10, 0.5), std::domain_error);
    CHECK_THROWS_AS(s_terms(FnSpec::rho(), 10, 3.0), std::domain_error);  // 27 > 10
    CHECK_THROWS_AS(verify_identity(FnSpec::rho(), 7, 2.0), std::domain_error);
}

TEST_CASE("theta_g hand-computed value") {
    // rho (g = phi, k = 1), x = 10, z = 2: exact value -4007/540
    long double got = theta_g(FnSpec::rho(), 10.0L, 2.0);
    CHECK(std::fabs(got - (-4007.0L / 540.0L)) < 1e-12L);
}

TEST_CASE("theta_g single-term degeneracies") {
    // z = x leaves only d = 1: x * g(1) * psi(x) = -x/2 at integer x
    CHECK(std::fabs(theta_g(FnSpec::rho(), 8.0L, 8.0) - (-4.0L)) < 1e-12L);
    CHECK(std::fabs(theta_g(FnSpec::upsilon(), 10.0L, 10.0) - (-5.0L)) < 1e-12L);
}

TEST_CASE("theta_g obeys the trivial bound") {
    SieveTable sieve(1000);
    for (const FnSpec& spec : {FnSpec::upsilon(), FnSpec::rho()}) {
        ArithFnTable g = tabulate_g(spec, 1000, sieve);
        for (double z : {1.0, 3.0, 9.5}) {
            long double x = 1000.0L;
            long double bound = 0.0L;
            uint64_t dmax = (uint64_t)(x / z);
            for (uint64_t d = 1; d <= dmax; ++d)
                bound += std::fabs(to_long_double(g(d))) / powi((long double)d, spec.k + 1);
            bound *= x / 2.0L;
            CHECK(std::fabs(theta_g(spec, x, z)) <= bound + 1e-9L);
        }
    }
}

TEST_CASE("theta_g changes by exactly the removed term at breakpoints") {
    const long double x = 60.0L;
    const uint64_t d = 5;  // crossing z = x/d removes the d-term
    SieveTable sieve(64);
    ArithFnTable g = tabulate_g(FnSpec::rho(), 64, sieve);
    double z_lo = (double)(x / d) - 1e-6, z_hi = (double)(x / d) + 1e-6;
    long double below = theta_g(FnSpec::rho(), x, z_lo);
    long double above = theta_g(FnSpec::rho(), x, z_hi);
    long double term = x * to_long_double(g(d)) / powi((long double)d, 2) *
                       sawtooth(x / (long double)d);
    CHECK(std::fabs((below - above) - term) < 1e-9L);
}

TEST_CASE("theta diagnostic") {
    // default B = 10 puts N0 far above x^{3/4}: empty range
    CHECK(theta_diagnostic(FnSpec::rho(), 1e4L, 10.0, 0, 4.0 / 3.0, SumKind::psi) == 0.0L);

    // small B makes the range nonempty
    long double d0 = theta_diagnostic(FnSpec::rho(), 2e4L, 2.0, 0, 4.0 / 3.0, SumKind::psi, 0.4);
    long double d1 = theta_diagnostic(FnSpec::rho(), 2e4L, 2.0, 1, 4.0 / 3.0, SumKind::psi, 0.4);
    CHECK(d0 != 0.0L);
    CHECK(std::isfinite((double)d0));
    CHECK(std::isfinite((double)d1));
    CHECK(d0 != d1);

    long double p0 = theta_diagnostic(FnSpec::rho(), 2e4L, 2.0, 0, 4.0 / 3.0, SumKind::pi, 0.4);
    CHECK(std::isfinite((double)p0));
    CHECK(p0 != d0);

    CHECK_THROWS_AS(theta_diagnostic(FnSpec::rho(), 1e4L, 2.0, 0, 1.05, SumKind::psi),
                    std::domain_error);
    CHECK_THROWS_AS(theta_diagnostic(FnSpec::rho(), 1e4L, 2.0, 2, 4.0 / 3.0, SumKind::psi),
                    std::invalid_argument);
    CHECK_THROWS_AS(theta_diagnostic(FnSpec::rho(), 1e4L, 0.5, 0, 4.0 / 3.0, SumKind::psi),
                    std::domain_error);
}

TEST_CASE("report fields") {
    HyperbolaReport rep = verify_identity(FnSpec::upsilon(), 144, 4.0);
    CHECK(rep.x == 144);
    CHECK(rep.main_term == doctest::Approx(0.5 * 1.9773043502972961 * 144.0 * 144.0));
    CHECK((double)rep.residual ==
          doctest::Approx((double)(to_long_double(rep.lhs) - rep.main_term + rep.theta)));
}
