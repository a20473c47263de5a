#include "partsum/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "partsum/errors.hpp"
#include "partsum/numeric.hpp"
#include "partsum/parallel.hpp"
#include "partsum/rational.hpp"

namespace partsum {

namespace {
constexpr long double pi_ld = 3.14159265358979323846264338327950288L;
constexpr long double e_ld = 2.71828182845904523536028747135266250L;
}  // namespace

/* ---------------------------------------------------------------------------
   zeta by Euler-Maclaurin:
     zeta(s) = sum_{n<=N} n^-s + N^{1-s}/(s-1) - N^-s/2
             + sum_{j<=J} B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1} + R_J
   with |R_J| bounded by the first omitted term for real s > 1. At N = 64,
   J = 12 the omitted term is far below 1e-13 for every s >= 2.
   --------------------------------------------------------------------------- */

long double zeta_oracle(long double s) {
    if (s < 2.0L) throw std::domain_error("zeta_oracle: s must be >= 2");
    constexpr unsigned n_direct = 64;
    // B_2, B_4, ..., B_24
    static const long double bern[] = {
        1.0L / 6,       -1.0L / 30,     1.0L / 42,      -1.0L / 30,
        5.0L / 66,      -691.0L / 2730, 7.0L / 6,       -3617.0L / 510,
        43867.0L / 798, -174611.0L / 330, 854513.0L / 138, -236364091.0L / 2730};

    NeumaierSum sum;
    for (unsigned n = 1; n <= n_direct; ++n) sum.add(std::pow((long double)n, -s));
    const long double nld = (long double)n_direct;
    sum.add(std::pow(nld, 1.0L - s) / (s - 1.0L));
    sum.add(-0.5L * std::pow(nld, -s));

    long double rising = s;                       // s(s+1)...(s+2j-2)
    long double npow = std::pow(nld, -s - 1.0L);  // N^{-s-2j+1}
    long double fact = 2.0L;                      // (2j)!
    for (unsigned j = 1; j <= 12; ++j) {
        sum.add(bern[j - 1] / fact * rising * npow);
        rising *= (s + (long double)(2 * j - 1)) * (s + (long double)(2 * j));
        npow /= nld * nld;
        fact *= (long double)(2 * j + 1) * (long double)(2 * j + 2);
    }
    return sum.value();
}

/* ---------------------------------------------------------------------------
   Truncation planning for C_{f,k} = sum g(n)/n^{k+2}.
   Majorants: sigma(n) <= n(1 + log n), phi(n) <= n, |mu(n)| <= 1, custom
   |g(n)| <= c n^a. Integral comparison gives closed-form tail bounds that are
   monotone decreasing in N.
   --------------------------------------------------------------------------- */

namespace {

long double cfk_tail_bound(const FnSpec& spec, uint64_t n) {
    const long double nl = (long double)n;
    const unsigned k = spec.k;
    switch (spec.g_kind) {
        case GKind::sigma:
            if (k < 1)
                throw std::domain_error(
                    "constant_cfk: sum of sigma(n)/n^2 diverges; need k >= 1");
            return ((1.0L + std::log(nl)) / k + 1.0L / ((long double)k * k)) / powi(nl, k);
        case GKind::phi:
            if (k < 1)
                throw std::domain_error("constant_cfk: sum of phi(n)/n^2 diverges; need k >= 1");
            return 1.0L / ((long double)k * powi(nl, k));
        case GKind::mu:
            return 1.0L / ((long double)(k + 1) * powi(nl, k + 1));
        case GKind::custom_table: {
            if (!spec.g_majorant)
                throw std::invalid_argument(
                    "constant_cfk: custom g has no documented majorant |g(n)| <= c n^a; "
                    "set FnSpec::g_majorant");
            const auto [c, a] = *spec.g_majorant;
            if (!(a < (double)k + 1.0))
                throw std::domain_error(
                    "constant_cfk: majorant exponent a must satisfy a < k+1 or the series "
                    "need not converge");
            return (long double)c * std::pow(nl, (long double)a - k - 1) /
                   ((long double)k + 1.0L - (long double)a);
        }
    }
    throw std::logic_error("unreachable");
}

uint64_t plan_truncation(const FnSpec& spec, double epsilon) {
    if (!(epsilon > 0)) throw std::domain_error("constant_cfk: epsilon must be positive");
    constexpr uint64_t n_cap = 200'000'000'000ULL;
    uint64_t lo = 2, hi = 2;
    while (cfk_tail_bound(spec, hi) > (long double)epsilon) {
        if (hi >= n_cap)
            throw capacity_error("constant_cfk: epsilon needs truncation beyond " +
                                 std::to_string(n_cap) + " terms");
        lo = hi;
        hi = std::min(n_cap, hi * 2);
    }
    while (lo + 1 < hi) {
        uint64_t mid = lo + (hi - lo) / 2;
        if (cfk_tail_bound(spec, mid) > (long double)epsilon)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

std::vector<uint32_t> simple_primes(uint64_t bound) {
    std::vector<uint32_t> primes;
    if (bound < 2) return primes;
    std::vector<uint8_t> comp(bound + 1, 0);
    for (uint64_t i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        primes.push_back((uint32_t)i);
        for (uint64_t j = i * i; j <= bound; j += i) comp[j] = 1;
    }
    return primes;
}

/* Segmented evaluation of sum_{n<=N} g(n)/n^{k+2} for g in {sigma, phi, mu}.
   Per segment, acc[] accumulates the multiplicative quantity
     sigma/phi: g(n)/n = prod over prime powers p^j || n of telescoping factors
     mu:        mu(n) itself
   while prod[] tracks the product of marked prime powers so that one prime
   factor above sqrt(N) can be recovered exactly as n / prod (all quantities
   stay below 2^53, so the doubles are exact integers). Multiplications only;
   no divisions inside the marking loops. */
long double marked_cfk_sum(GKind kind, unsigned k, uint64_t n_max) {
    constexpr uint64_t seg = 1u << 22;
    const std::vector<uint32_t> primes = simple_primes(isqrt_u64(n_max));
    const size_t n_chunks = (size_t)((n_max + seg - 1) / seg);
    std::vector<long double> partials(n_chunks, 0.0L);
    const unsigned denom_exp = (kind == GKind::mu) ? k + 2 : k + 1;

    parallel_for_chunks(n_chunks, [&](size_t ci) {
        const uint64_t lo = 1 + (uint64_t)ci * seg;
        const uint64_t hi = std::min(n_max, lo + seg - 1);
        const size_t len = (size_t)(hi - lo + 1);
        static thread_local std::vector<double> acc, prod;
        acc.assign(len, 1.0);
        prod.assign(len, 1.0);

        for (uint32_t p : primes) {
            if ((uint64_t)p > hi) break;
            const double pd = (double)p;
            uint64_t q = p;
            unsigned j = 1;
            double sig_prev = 1.0, sig_cur = pd + 1.0;  // sigma(p^{j-1}), sigma(p^j)
            while (q <= hi) {
                double fac = 1.0;
                switch (kind) {
                    case GKind::sigma: fac = sig_cur / (sig_prev * pd); break;
                    case GKind::phi: fac = (j == 1) ? (pd - 1.0) / pd : 1.0; break;
                    case GKind::mu: fac = (j == 1) ? -1.0 : 0.0; break;
                    default: break;
                }
                uint64_t start = ((lo + q - 1) / q) * q;
                if (fac != 1.0) {
                    for (uint64_t m = start; m <= hi; m += q) {
                        acc[m - lo] *= fac;
                        prod[m - lo] *= pd;
                    }
                } else {
                    for (uint64_t m = start; m <= hi; m += q) prod[m - lo] *= pd;
                }
                if (q > hi / p) break;
                q *= p;
                ++j;
                sig_prev = sig_cur;
                sig_cur = sig_cur * pd + 1.0;
            }
        }

        NeumaierSum s;
        for (size_t i = 0; i < len; ++i) {
            const uint64_t n = lo + i;
            double m = acc[i];
            const double leftover = (double)n / prod[i];  // exact: 1 or a prime > sqrt(N)
            if (leftover > 1.5) {
                switch (kind) {
                    case GKind::sigma: m *= (leftover + 1.0) / leftover; break;
                    case GKind::phi: m *= (leftover - 1.0) / leftover; break;
                    case GKind::mu: m = -m; break;
                    default: break;
                }
            }
            if (m != 0.0) s.add((long double)m / powi((long double)n, denom_exp));
        }
        partials[ci] = s.value();
    });

    NeumaierSum total;
    for (long double part : partials) total.add(part);
    return total.value();
}

std::optional<std::string> cfk_closed_form_label(const FnSpec& spec) {
    if (spec.g_kind == GKind::sigma && spec.k == 1) return "zeta(2)*zeta(3)";
    if (spec.g_kind == GKind::phi && spec.k == 2) return "zeta(3)/zeta(4)";
    if (spec.g_kind == GKind::phi && spec.k == 1) return "zeta(2)/zeta(3)";
    return std::nullopt;
}

}  // namespace

long double cfk_truncated_sum(const FnSpec& spec, uint64_t n_trunc) {
    if (n_trunc < 1) throw std::invalid_argument("cfk_truncated_sum: need N >= 1");
    if (spec.g_kind == GKind::custom_table) {
        if (!spec.custom_g || spec.custom_g->size() < n_trunc)
            throw capacity_error("constant_cfk: custom table shorter than truncation point " +
                                 std::to_string(n_trunc));
        NeumaierSum s;
        for (uint64_t n = 1; n <= n_trunc; ++n)
            s.add(to_long_double((*spec.custom_g)[n - 1]) / powi((long double)n, spec.k + 2));
        return s.value();
    }
    return marked_cfk_sum(spec.g_kind, spec.k, n_trunc);
}

ConstantEstimate constant_cfk(const FnSpec& spec, double epsilon) {
    ConstantEstimate est;
    est.truncation_n = plan_truncation(spec, epsilon);
    est.tail_bound = cfk_tail_bound(spec, est.truncation_n);
    est.value = cfk_truncated_sum(spec, est.truncation_n);
    est.closed_form = cfk_closed_form_label(spec);
    return est;
}

ConstantEstimate constant_hgk(const FnSpec& spec) {
    ConstantEstimate est;
    est.tail_bound = 0.0L;
    if (spec.g_kind == GKind::sigma && spec.k == 1) {
        est.value = pi_ld * pi_ld / 6.0L;
        est.closed_form = "pi^2/6";
        return est;
    }
    if (spec.g_kind == GKind::phi && spec.k == 2) {
        est.value = 0.0L;
        est.closed_form = "0";
        return est;
    }
    if (spec.g_kind == GKind::phi && spec.k == 1) {
        est.value = 6.0L / (pi_ld * pi_ld);
        est.closed_form = "6/pi^2";
        return est;
    }
    throw std::invalid_argument(
        "constant_hgk: no closed form for this (g, k); call fit_hgk explicitly");
}

ConstantEstimate fit_hgk(const FnSpec& spec, uint64_t x_max, unsigned points) {
    if (points < 2 || x_max < 16)
        throw std::invalid_argument("fit_hgk: need x_max >= 16 and at least two grid points");
    ArithFnTable g = tabulate_g(spec, x_max);
    std::vector<uint64_t> grid(points);
    for (unsigned i = 0; i < points; ++i)
        grid[i] = (uint64_t)std::llround(
            std::pow((double)x_max, (double)(i + 1) / (double)points));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    NeumaierSum acc;
    std::vector<long double> s_at(grid.size());
    size_t gi = 0;
    for (uint64_t n = 1; n <= x_max && gi < grid.size(); ++n) {
        long double gn = to_long_double(g(n));
        acc.add(std::fabs(gn) / powi((long double)n, spec.k));
        while (gi < grid.size() && grid[gi] == n) s_at[gi++] = acc.value();
    }

    long double sxy = 0.0L, sxx = 0.0L;
    for (size_t i = 0; i < grid.size(); ++i) {
        sxy += s_at[i] * (long double)grid[i];
        sxx += (long double)grid[i] * (long double)grid[i];
    }
    ConstantEstimate est;
    est.value = sxy / sxx;  // least squares through the origin
    est.truncation_n = x_max;
    long double worst = 0.0L;
    for (size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst,
                         std::fabs(s_at[i] - est.value * (long double)grid[i]) /
                             (long double)grid[i]);
    est.tail_bound = worst;  // reported fit residual, not a certified enclosure
    return est;
}

long double cfk_reference(const FnSpec& spec) {
    static std::once_flag once[3];
    static long double cached[3];
    int slot = -1;
    if (spec.g_kind == GKind::sigma && spec.k == 1) slot = 0;
    if (spec.g_kind == GKind::phi && spec.k == 2) slot = 1;
    if (spec.g_kind == GKind::phi && spec.k == 1) slot = 2;
    if (slot >= 0) {
        std::call_once(once[slot], [&] {
            switch (slot) {
                case 0: cached[0] = zeta_oracle(2.0L) * zeta_oracle(3.0L); break;
                case 1: cached[1] = zeta_oracle(3.0L) / zeta_oracle(4.0L); break;
                case 2: cached[2] = zeta_oracle(2.0L) / zeta_oracle(3.0L); break;
            }
        });
        return cached[slot];
    }
    // No zeta product available: truncated sum, capped at 10^8 terms.
    uint64_t n = plan_truncation(spec, 1e-12);
    n = std::min<uint64_t>(n, 100'000'000ULL);
    if (spec.g_kind == GKind::custom_table && spec.custom_g)
        n = std::min<uint64_t>(n, spec.custom_g->size());
    return cfk_truncated_sum(spec, n);
}

long double main_term_psi(const FnSpec& spec, long double x) {
    if (!(x > 1.0L)) throw std::domain_error("main_term_psi: x must exceed 1");
    return cfk_reference(spec) * x * std::log(x);
}

/* ---------------------------------------------------------------------------
   Envelopes and thresholds.
   --------------------------------------------------------------------------- */

namespace {

void check_window(long double x, long double z, double a_param, bool* violated) {
    if (!violated) return;
    long double b = (long double)min_b_for(a_param);
    long double zlo = std::pow(std::log(x), b);
    long double zhi = std::pow(x, 1.0L / 12.0L);
    *violated = !(zlo <= z && z <= zhi);
}

std::array<long double, 4> envelope_terms(const FnSpec& spec, long double x, long double z,
                                          double a_param, bool pi_kind) {
    if (!(a_param >= 1.0)) throw std::domain_error("envelope: A must be >= 1");
    if (!(z >= 1.0L)) throw std::domain_error("envelope: z must be >= 1");
    const long double lx = std::log(x);
    std::array<long double, 4> t{};
    if (pi_kind) {
        if (!(x > std::exp(e_ld)))
            throw std::domain_error("envelope_pi: x must exceed e^e for log3 x");
        t[0] = std::log(std::log(lx));
    } else {
        if (!(x >= 3.0L)) throw std::domain_error("envelope_psi: x must be >= 3");
        t[0] = std::pow(lx, 2.0L / 3.0L) * std::pow(std::log(lx), 1.0L / 3.0L) *
               spec.growth.r1.eval(x);
    }
    t[1] = z * lx / spec.growth.r3.eval(x / z);
    t[2] = spec.growth.r2.eval(x / z) / std::pow(lx, (long double)a_param);
    t[3] = lx / spec.growth.r3.eval(std::pow(x, 0.25L) / z);
    return t;
}

}  // namespace

std::array<long double, 4> envelope_psi_terms(const FnSpec& spec, long double x, long double z,
                                              double a_param) {
    return envelope_terms(spec, x, z, a_param, false);
}

std::array<long double, 4> envelope_pi_terms(const FnSpec& spec, long double x, long double z,
                                             double a_param) {
    return envelope_terms(spec, x, z, a_param, true);
}

long double envelope_psi(const FnSpec& spec, long double x, long double z, double a_param,
                         bool* window_violated) {
    auto t = envelope_terms(spec, x, z, a_param, false);
    check_window(x, z, a_param, window_violated);
    return t[0] + t[1] + t[2] + t[3];
}

long double envelope_pi(const FnSpec& spec, long double x, long double z, double a_param,
                        bool* window_violated) {
    auto t = envelope_terms(spec, x, z, a_param, true);
    check_window(x, z, a_param, window_violated);
    return t[0] + t[1] + t[2] + t[3];
}

std::pair<long double, long double> sandwich_pi(const FnSpec& spec, long double x) {
    if (!spec.L_bound)
        throw std::invalid_argument("sandwich_pi: spec has no L with 0 <= f(n) <= L n^{k+1}");
    if (!(x > e_ld)) throw std::domain_error("sandwich_pi: x must exceed e");
    const long double c = cfk_reference(spec);
    const long double loglog = std::log(std::log(x));
    const long double l = (long double)*spec.L_bound;
    return {c / 3.0L * x * loglog, (c + 2.0L * l) / 3.0L * x * loglog};
}

long double n0_threshold(long double x, double b) {
    if (!(x >= 10.0L)) throw std::domain_error("n0_threshold: x must be >= 10");
    if (!(b > 0.0)) throw std::domain_error("n0_threshold: B must be positive");
    const long double lx = std::log(x);
    return std::exp((long double)b * std::pow(lx, 2.0L / 3.0L) *
                    std::pow(std::log(lx), 1.0L / 3.0L));
}

double min_b_for(double a_param) { return 2.0 * a_param + 8.0; }

Prediction predict_psi(const FnSpec& spec, long double x, double z, double a_param) {
    Prediction p;
    p.x = x;
    p.kind = PredictionKind::psi_main;
    p.z = z;
    p.a_param = a_param;
    p.l_bound = spec.L_bound;
    p.main = main_term_psi(spec, x);
    p.envelope = x * envelope_psi(spec, x, (long double)z, a_param);
    return p;
}

Prediction predict_pi(const FnSpec& spec, long double x, double z, double a_param) {
    Prediction p;
    p.x = x;
    p.kind = PredictionKind::pi_sandwich;
    p.z = z;
    p.a_param = a_param;
    p.l_bound = spec.L_bound;
    p.main = cfk_reference(spec) / 3.0L * x * std::log(std::log(x));
    p.envelope = x * envelope_pi(spec, x, (long double)z, a_param);
    return p;
}

}  // namespace partsum
