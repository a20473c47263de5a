#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "partsum/vaaler.hpp"

using namespace partsum;

namespace {
constexpr long double pi_v = 3.14159265358979323846264338327950288L;

struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long double unit() { return (long double)(next() >> 11) * 0x1p-53L; }
};
}  // namespace

TEST_CASE("sawtooth") {
    CHECK(sawtooth(0.25L) == -0.25L);
    CHECK(sawtooth(3.0L) == -0.5L);
    CHECK(sawtooth(-0.25L) == 0.25L);  // {-0.25} = 0.75
    CHECK(sawtooth(0.0L) == -0.5L);
}

TEST_CASE("phi kernel") {
    CHECK(phi_kernel(0.5L) == doctest::Approx(0.5).epsilon(1e-15));
    // removable singularity at 0
    CHECK(std::fabs(phi_kernel(1e-9L) - 1.0L) < 1e-12L);
    CHECK(phi_kernel(0.0L) == 1.0L);
    // vanishes at the edge
    CHECK(std::fabs(phi_kernel(1.0L - 1e-9L)) < 1e-9L);
    // Phi(1/4) = 3 pi/16 + 1/4
    CHECK(std::fabs(phi_kernel(0.25L) - (3.0L * pi_v / 16.0L + 0.25L)) < 1e-15L);
    CHECK(std::fabs(phi_kernel(0.25L) - 0.83904862254808623L) < 1e-15L);
    // even
    for (long double u : {0.1L, 0.33L, 0.77L, 0.99995L})
        CHECK(phi_kernel(u) == phi_kernel(-u));
    // series/direct switchover is continuous
    CHECK(std::fabs(phi_kernel(1e-4L + 1e-9L) - phi_kernel(1e-4L - 1e-9L)) < 1e-10L);
    CHECK_THROWS_AS(phi_kernel(1.0L), std::domain_error);
    CHECK_THROWS_AS(phi_kernel(-1.5L), std::domain_error);
}

TEST_CASE("approximation special points") {
    CHECK(vaaler_approx(0.0L, 7) == 0.0L);
    CHECK(std::fabs(vaaler_approx(0.5L, 9)) < 1e-15L);
    long double v = vaaler_approx(0.3L, 10);
    CHECK(std::fabs(sawtooth(0.3L) - v) <= fejer_bound(0.3L, 10));
    CHECK(std::fabs(v - (-0.19971942718630994L)) < 1e-12L);
}

TEST_CASE("fejer bound closed form") {
    CHECK(fejer_bound(3.0L, 17) == 0.5L);
    CHECK(std::fabs(fejer_bound(0.5L, 1)) < 1e-20L);
    SplitMix64 rng{7};
    for (int i = 0; i < 400; ++i) {
        long double t = rng.unit();
        for (unsigned h : {1u, 4u, 16u, 64u, 256u}) {
            long double closed = fejer_bound(t, h);
            CHECK(closed >= 0.0L);
            CHECK(std::fabs(closed - fejer_bound_direct(t, h)) <= 1e-12L);
        }
    }
}

TEST_CASE("check_bound") {
    VaalerCheck a = check_bound(0.25L, 4);
    CHECK(std::fabs(a.remainder) <= a.bound + 1e-12L);
    VaalerCheck b = check_bound(0.5L, 12);
    CHECK(std::fabs(b.remainder) < 1e-15L);
    // integer t: equality edge, reported but not a failure (the sine terms
    // vanish only up to rounding of 2 pi h)
    VaalerCheck c = check_bound(1.0L, 8);
    CHECK(c.bound == 0.5L);
    CHECK(std::fabs(c.approx) < 1e-15L);
    CHECK(std::fabs(c.remainder + 0.5L) < 1e-15L);
}

TEST_CASE("bound property on random samples") {
    SplitMix64 rng{20240817};
    const unsigned ladder[] = {1, 4, 16, 64, 256};
    for (int i = 0; i < 10000; ++i) {
        long double t = rng.unit();
        if (t < 1e-9L) continue;
        for (unsigned h : ladder) {
            long double rem = sawtooth(t) - vaaler_approx(t, h);
            CHECK(std::fabs(rem) <= fejer_bound(t, h) + 1e-12L);
        }
    }
}

TEST_CASE("periodicity and odd symmetry") {
    SplitMix64 rng{5};
    for (int i = 0; i < 200; ++i) {
        long double t = rng.unit();
        for (unsigned h : {4u, 64u}) {
            CHECK(std::fabs(vaaler_approx(t + 1.0L, h) - vaaler_approx(t, h)) < 1e-12L);
            CHECK(std::fabs(vaaler_approx(1.0L - t, h) + vaaler_approx(t, h)) < 1e-12L);
        }
    }
}

TEST_CASE("mean-square remainder decays along the H ladder") {
    SplitMix64 rng{99};
    std::vector<long double> ts;
    for (int i = 0; i < 2000; ++i) ts.push_back(rng.unit());
    long double prev = 1e30L;
    for (unsigned h : {1u, 4u, 16u, 64u, 256u}) {
        long double ms = 0.0L;
        for (long double t : ts) {
            long double rem = sawtooth(t) - vaaler_approx(t, h);
            ms += rem * rem;
        }
        ms /= (long double)ts.size();
        CHECK(ms < prev);
        prev = ms;
    }
}
