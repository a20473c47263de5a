#include "partsum/vaaler.hpp"

#include <cmath>
#include <stdexcept>

#include "partsum/numeric.hpp"

namespace partsum {

namespace {
constexpr long double pi_ld = 3.14159265358979323846264338327950288L;
constexpr long double edge = 1e-4L;
}  // namespace

long double sawtooth(long double t) {
    long double frac = t - std::floor(t);
    return frac - 0.5L;
}

long double phi_kernel(long double u) {
    long double a = std::fabs(u);
    if (a >= 1.0L) throw std::domain_error("phi_kernel: |u| must be < 1");
    if (a == 0.0L) return 1.0L;
    if (a < edge) {
        // pi a cot(pi a) = 1 - y^2/3 - y^4/45 - ..., y = pi a
        long double y2 = pi_ld * a * pi_ld * a;
        return (1.0L - a) * (1.0L - y2 / 3.0L - y2 * y2 / 45.0L) + a;
    }
    if (1.0L - a < edge) {
        // with v = 1 - a: Phi = a (w^2/3 + w^4/45 + ...), w = pi v
        long double v = 1.0L - a;
        long double w2 = pi_ld * v * pi_ld * v;
        return a * (w2 / 3.0L + w2 * w2 / 45.0L);
    }
    return pi_ld * a * (1.0L - a) * (std::cos(pi_ld * a) / std::sin(pi_ld * a)) + a;
}

long double vaaler_approx(long double t, unsigned h_max) {
    if (h_max < 1) throw std::domain_error("vaaler_approx: H must be >= 1");
    NeumaierSum s;
    const long double hp1 = (long double)h_max + 1.0L;
    for (unsigned h = 1; h <= h_max; ++h) {
        long double phi = phi_kernel((long double)h / hp1);
        s.add(phi * std::sin(2.0L * pi_ld * (long double)h * t) / (pi_ld * (long double)h));
    }
    return -s.value();
}

long double fejer_bound(long double t, unsigned h_max) {
    if (h_max < 1) throw std::domain_error("fejer_bound: H must be >= 1");
    long double frac = t - std::floor(t);
    if (frac == 0.0L) return 0.5L;  // kernel peak at integers
    const long double hp1 = (long double)h_max + 1.0L;
    long double ratio = std::sin(pi_ld * hp1 * t) / std::sin(pi_ld * t);
    return ratio * ratio / (2.0L * hp1 * hp1);
}

long double fejer_bound_direct(long double t, unsigned h_max) {
    if (h_max < 1) throw std::domain_error("fejer_bound: H must be >= 1");
    const long double hp1 = (long double)h_max + 1.0L;
    NeumaierSum s;
    s.add(1.0L);
    for (unsigned h = 1; h <= h_max; ++h) {
        // e(ht) + e(-ht) = 2 cos(2 pi h t)
        s.add(2.0L * (1.0L - (long double)h / hp1) * std::cos(2.0L * pi_ld * (long double)h * t));
    }
    return s.value() / (2.0L * hp1);
}

VaalerCheck check_bound(long double t, unsigned h_max) {
    VaalerCheck c;
    c.t = t;
    c.h_max = h_max;
    c.sawtooth = sawtooth(t);
    c.approx = vaaler_approx(t, h_max);
    c.remainder = c.sawtooth - c.approx;
    c.bound = fejer_bound(t, h_max);
    bool integer_t = (t == std::floor(t));
    if (!integer_t && std::fabs(c.remainder) > c.bound + 1e-12L)
        throw std::logic_error("vaaler remainder bound violated (implementation bug)");
    return c;
}

}  // namespace partsum
