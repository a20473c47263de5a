#include "partsum/hyperbola.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "partsum/asymptotics.hpp"
#include "partsum/errors.hpp"
#include "partsum/numeric.hpp"
#include "partsum/vaaler.hpp"

namespace partsum {

namespace {

void require_z_domain(uint64_t x, double z) {
    long double zc = (long double)z * z * z;
    if (z < 1.0 || zc > (long double)x * (1.0L + 1e-12L) + 1e-9L)
        throw std::domain_error("hyperbola: z must lie in [1, x^{1/3}], got z = " +
                                std::to_string(z) + ", x = " + std::to_string(x));
}

// acc += w * g, g a signed 128-bit table value.
void addmul_int128(BigInt& acc, const BigInt& w, Int128 g) {
    if (g == 0) return;
    if (g > 0 && g <= (Int128)0x7fffffffffffffffLL) {
        mpz_addmul_ui(acc.get_mpz_t(), w.get_mpz_t(), (unsigned long)(uint64_t)g);
    } else if (g < 0 && -g <= (Int128)0x7fffffffffffffffLL) {
        mpz_submul_ui(acc.get_mpz_t(), w.get_mpz_t(), (unsigned long)(uint64_t)(-g));
    } else {
        acc += w * bigint_from_int128(g);
    }
}

// den / d^k, exact by construction (den is a multiple of lcm(1..d)^k).
void divexact_pow(BigInt& out, const BigInt& den, uint64_t d, unsigned k) {
    if (k == 0) {
        out = den;
        return;
    }
    UInt128 dk = 1;
    bool fits = true;
    for (unsigned j = 0; j < k && fits; ++j) {
        if (dk > UInt128(~0ULL) / d) fits = false;
        else dk *= d;
    }
    if (fits && dk <= UInt128(~0ULL)) {
        mpz_divexact_ui(out.get_mpz_t(), den.get_mpz_t(), (unsigned long)(uint64_t)dk);
    } else {
        BigInt dkz;
        mpz_ui_pow_ui(dkz.get_mpz_t(), d, k);
        mpz_divexact(out.get_mpz_t(), den.get_mpz_t(), dkz.get_mpz_t());
    }
}

uint64_t triangle(uint64_t y) { return (y % 2 == 0) ? (y / 2) * (y + 1) : y * ((y + 1) / 2); }

long double theta_with_table(const ArithFnTable& g, unsigned k, long double x, double z) {
    if (z < 1.0 || x < 1.0L) throw std::domain_error("theta_g: need x >= 1 and z >= 1");
    uint64_t dmax = (uint64_t)std::floor(x / (long double)z);
    if (dmax > g.limit()) throw capacity_error("theta_g: g table shorter than x/z");
    NeumaierSum s;
    for (uint64_t d = 1; d <= dmax; ++d) {
        long double gd = to_long_double(g(d));
        if (gd == 0.0L) continue;
        s.add(gd / powi((long double)d, k + 1) * sawtooth(x / (long double)d));
    }
    return x * s.value();
}

}  // namespace

HyperbolaEngine::HyperbolaEngine(const FnSpec& spec, uint64_t x_max)
    : spec_(spec),
      k_(spec.k),
      sieve_(std::max<uint64_t>(x_max, 2)),
      g_(tabulate_g(spec, std::max<uint64_t>(x_max, 1), sieve_)),
      prefix_(spec, std::max<uint64_t>(x_max, 1)),
      lcm_(1),
      lcm_x_(1) {}

void HyperbolaEngine::advance_lcm(uint64_t x) {
    if (x < lcm_x_) throw std::invalid_argument("HyperbolaEngine: x must be non-decreasing");
    for (uint64_t n = lcm_x_ + 1; n <= x; ++n) {
        MangoldtValue mv = mangoldt(n, sieve_);
        if (mv.is_prime_power) lcm_ *= (unsigned long)*mv.base_prime;
    }
    lcm_x_ = x;
}

STerms HyperbolaEngine::s_terms_with_den(uint64_t x, double z, const BigInt& den) const {
    require_z_domain(x, z);
    if (x > g_.limit()) throw capacity_error("HyperbolaEngine: x beyond prepared range");

    const uint64_t m = (uint64_t)std::floor((long double)x / (long double)z);
    const uint64_t zi = (uint64_t)z;

    BigInt s1num(0), s2num(0), s3num(0);
    BigInt w;

    // S1 over d <= m, weight T([x/d]).
    for (uint64_t d = 1; d <= m; ++d) {
        Int128 gd = g_(d);
        if (gd == 0) continue;
        divexact_pow(w, den, d, k_);
        mpz_mul_ui(w.get_mpz_t(), w.get_mpz_t(), (unsigned long)triangle(x / d));
        addmul_int128(s1num, w, gd);
    }

    // One ascending pass captures P(M) = sum_{d<=M} g(d)/d^k at every M we
    // need: M = [x/j] for j <= [z] (S2) and M = m (S3).
    std::vector<std::pair<uint64_t, uint64_t>> targets;  // (M, j), j = 0 marks S3
    targets.emplace_back(m, 0);
    for (uint64_t j = 1; j <= zi; ++j) targets.emplace_back(x / j, j);
    std::sort(targets.begin(), targets.end());

    BigInt pacc(0);
    size_t ti = 0;
    uint64_t dmax = targets.back().first;
    for (uint64_t d = 1; d <= dmax; ++d) {
        Int128 gd = g_(d);
        if (gd != 0) {
            divexact_pow(w, den, d, k_);
            addmul_int128(pacc, w, gd);
        }
        while (ti < targets.size() && targets[ti].first == d) {
            const uint64_t j = targets[ti].second;
            if (j == 0)
                s3num = pacc;
            else
                mpz_addmul_ui(s2num.get_mpz_t(), pacc.get_mpz_t(), (unsigned long)j);
            ++ti;
        }
    }
    // Targets at M = 0 cannot occur (z <= x^{1/3} implies [x/j] >= 1), but an
    // M-target of d=0 would have been skipped; assert consumption.
    if (ti != targets.size()) throw std::logic_error("hyperbola: prefix capture out of sync");

    mpz_mul_ui(s3num.get_mpz_t(), s3num.get_mpz_t(), (unsigned long)triangle(zi));

    STerms out;
    out.s1 = Rational(s1num, den);
    out.s1.canonicalize();
    out.s2 = Rational(s2num, den);
    out.s2.canonicalize();
    out.s3 = Rational(s3num, den);
    out.s3.canonicalize();
    return out;
}

STerms HyperbolaEngine::s_terms(uint64_t x, double z) const {
    require_z_domain(x, z);
    // Stand-alone path: build the denominator lcm(1..x)^k afresh.
    BigInt lcm(1);
    for (uint64_t n = 2; n <= x; ++n) {
        MangoldtValue mv = mangoldt(n, sieve_);
        if (mv.is_prime_power) lcm *= (unsigned long)*mv.base_prime;
    }
    BigInt den;
    mpz_pow_ui(den.get_mpz_t(), lcm.get_mpz_t(), k_);
    return s_terms_with_den(x, z, den);
}

long double HyperbolaEngine::theta(long double x, double z) const {
    return theta_with_table(g_, k_, x, z);
}

HyperbolaReport HyperbolaEngine::verify(uint64_t x, double z) {
    require_z_domain(x, z);
    advance_lcm(x);
    BigInt den;
    mpz_pow_ui(den.get_mpz_t(), lcm_.get_mpz_t(), k_);
    STerms st = s_terms_with_den(x, z, den);

    prefix_.advance_to(x);
    HyperbolaReport rep;
    rep.x = x;
    rep.z = z;
    rep.s1 = st.s1;
    rep.s2 = st.s2;
    rep.s3 = st.s3;
    rep.lhs = prefix_.value();

    Rational rhs = st.s1 + st.s2 - st.s3;
    if (cmp(rhs, rep.lhs) != 0)
        throw std::logic_error("hyperbola identity violated at x = " + std::to_string(x) +
                               ", z = " + std::to_string(z) + " (implementation bug)");

    rep.theta = theta((long double)x, z);
    rep.main_term = 0.5L * cfk_reference(spec_) * (long double)x * (long double)x;
    rep.residual = to_long_double(rep.lhs) - rep.main_term + rep.theta;
    return rep;
}

STerms s_terms(const FnSpec& spec, uint64_t x, double z) {
    require_z_domain(x, z);
    HyperbolaEngine engine(spec, x);
    return engine.s_terms(x, z);
}

HyperbolaReport verify_identity(const FnSpec& spec, uint64_t x, double z) {
    require_z_domain(x, z);
    HyperbolaEngine engine(spec, x);
    return engine.verify(x, z);
}

long double theta_g(const FnSpec& spec, long double x, double z) {
    if (z < 1.0 || x < 1.0L) throw std::domain_error("theta_g: need x >= 1 and z >= 1");
    uint64_t dmax = (uint64_t)std::floor(x / (long double)z);
    dmax = std::max<uint64_t>(dmax, 1);
    ArithFnTable g = tabulate_g(spec, dmax);
    return theta_with_table(g, spec.k, x, z);
}

long double theta_diagnostic(const FnSpec& spec, long double x, double z, int delta,
                             double lambda, SumKind kind, double b) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("theta_diagnostic: delta must be 0 or 1");
    if (lambda <= 12.0 / 11.0)
        throw std::domain_error("theta_diagnostic: lambda must exceed 12/11");
    if (z < 1.0) throw std::domain_error("theta_diagnostic: z must be >= 1");

    long double n0 = n0_threshold(x, b);
    uint64_t nmax = (uint64_t)std::floor(std::pow(x, 1.0L / (long double)lambda));
    if (n0 >= (long double)nmax) return 0.0L;  // empty summation range
    uint64_t nmin = (uint64_t)std::floor(n0) + 1;
    if (nmin > nmax) return 0.0L;

    uint64_t table_limit =
        std::max<uint64_t>((uint64_t)std::floor((x / (long double)nmin) / (long double)z) + 1, 1);
    ArithFnTable g = tabulate_g(spec, table_limit);

    NeumaierSum s;
    for_each_prime_power(nmin, nmax, [&](uint64_t n, uint64_t p) {
        if (kind == SumKind::pi && n != p) return;
        long double y = x / (long double)n - (long double)delta;
        if (y < 1.0L) return;  // shifted argument fell below the Theta domain
        long double w = (kind == SumKind::psi) ? std::log((long double)p) : 1.0L;
        s.add(w * theta_with_table(g, spec.k, y, z));
    });
    return s.value();
}

}  // namespace partsum
