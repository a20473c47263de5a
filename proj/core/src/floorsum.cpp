#include "partsum/floorsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "partsum/errors.hpp"
#include "partsum/numeric.hpp"

namespace partsum {

namespace {
constexpr uint64_t brute_max_x = 10'000'000ULL;
constexpr uint64_t blocked_max_x = 1'000'000'000ULL;
}  // namespace

long double LogCombination::evaluate() const {
    NeumaierSum s;
    for (const auto& [p, c] : coeff) s.add(to_long_double(c) * std::log((long double)p));
    return s.value();
}

void LogCombination::add(uint64_t p, const Rational& c) {
    auto it = coeff.find(p);
    if (it == coeff.end()) {
        if (sgn(c) != 0) coeff.emplace(p, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) coeff.erase(it);
}

bool LogCombination::operator==(const LogCombination& other) const {
    if (coeff.size() != other.coeff.size()) return false;
    auto a = coeff.begin();
    auto b = other.coeff.begin();
    for (; a != coeff.end(); ++a, ++b) {
        if (a->first != b->first || cmp(a->second, b->second) != 0) return false;
    }
    return true;
}

/* ---------------------------------------------------------------------------
   Point evaluation of f = g * id^{k+1}.
   --------------------------------------------------------------------------- */

namespace {

std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t m, const SieveTable& sieve) {
    std::vector<std::pair<uint64_t, unsigned>> fac;
    uint64_t rest = m;
    for (uint32_t p : sieve.primes()) {
        if ((uint64_t)p * p > rest) break;
        if (rest % p == 0) {
            unsigned a = 0;
            while (rest % p == 0) {
                rest /= p;
                ++a;
            }
            fac.emplace_back(p, a);
        }
    }
    if (rest > 1) fac.emplace_back(rest, 1);  // one prime > sqrt(m) may remain
    return fac;
}

// g(p^j) for the preset kinds.
BigInt g_prime_power(GKind kind, uint64_t p, unsigned j) {
    if (j == 0) return BigInt(1);
    BigInt pj;
    mpz_ui_pow_ui(pj.get_mpz_t(), p, j);
    switch (kind) {
        case GKind::sigma: {
            BigInt num = pj * (long)p - 1;  // (p^{j+1} - 1)/(p - 1)
            return num / (long)(p - 1);
        }
        case GKind::phi:
            return pj - pj / (long)p;
        case GKind::mu:
            return j == 1 ? BigInt(-1) : BigInt(0);
        case GKind::custom_table:
            break;
    }
    throw std::logic_error("g_prime_power: custom kind has no closed form");
}

// f(p^a) = sum_{j<=a} g(p^j) p^{(k+1)(a-j)}
BigInt f_prime_power(GKind kind, unsigned k, uint64_t p, unsigned a) {
    BigInt total = 0;
    for (unsigned j = 0; j <= a; ++j) {
        BigInt pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), p, (unsigned long)(k + 1) * (a - j));
        total += g_prime_power(kind, p, j) * pw;
    }
    return total;
}

BigInt f_value_at(const FnSpec& spec, uint64_t m, const SieveTable& sieve) {
    if (m == 1) return BigInt(1);
    auto fac = factorize(m, sieve);
    if (spec.g_kind != GKind::custom_table) {
        BigInt f = 1;
        for (const auto& [p, a] : fac) f *= f_prime_power(spec.g_kind, spec.k, p, a);
        return f;
    }
    // Custom g need not be multiplicative: enumerate the divisors of m.
    if (!spec.custom_g) throw std::invalid_argument("f_at_point: custom spec has no table");
    if (spec.custom_g->size() < m)
        throw capacity_error("f_at_point: custom table shorter than m = " + std::to_string(m));
    std::vector<uint64_t> divs{1};
    for (const auto& [p, a] : fac) {
        size_t base = divs.size();
        uint64_t pw = 1;
        for (unsigned j = 1; j <= a; ++j) {
            pw *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
        }
    }
    BigInt f = 0;
    for (uint64_t d : divs) {
        BigInt pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), m / d, spec.k + 1);
        f += bigint_from_int128((*spec.custom_g)[d - 1]) * pw;
    }
    return f;
}

}  // namespace

Rational f_at_point(const FnSpec& spec, uint64_t m, const SieveTable& sieve) {
    if (m < 1) throw std::invalid_argument("f_at_point: m must be >= 1");
    if (isqrt_u64(m) > sieve.limit())
        throw capacity_error("f_at_point: sieve limit below sqrt(m), m = " + std::to_string(m));
    BigInt mk;
    mpz_ui_pow_ui(mk.get_mpz_t(), m, spec.k);
    Rational q(f_value_at(spec, m, sieve), mk);
    q.canonicalize();
    return q;
}

Rational f_at_point(const FnSpec& spec, uint64_t m) {
    SieveTable sieve(std::max<uint64_t>(isqrt_u64(m) + 1, 2));
    return f_at_point(spec, m, sieve);
}

/* ---------------------------------------------------------------------------
   Brute strategy: full f table, loop over prime powers / primes.
   --------------------------------------------------------------------------- */

namespace {

void require_brute_capacity(uint64_t x) {
    if (x > brute_max_x)
        throw capacity_error("brute strategy capped at x = " + std::to_string(brute_max_x) +
                             "; use the blocked strategy for x = " + std::to_string(x));
}

Rational table_ratio(const ArithFnTable& f, uint64_t q, unsigned k) {
    BigInt qk;
    mpz_ui_pow_ui(qk.get_mpz_t(), q, k);
    Rational r(bigint_from_int128(f(q)), qk);
    r.canonicalize();
    return r;
}

long double table_ratio_ld(const ArithFnTable& f, uint64_t q, unsigned k) {
    return to_long_double(f(q)) / powi((long double)q, k);
}

}  // namespace

SumResult psi_fk_brute(const FnSpec& spec, uint64_t x, bool exact) {
    require_brute_capacity(x);
    SumResult r;
    r.x = x;
    r.spec = spec;
    r.strategy = Strategy::brute;
    if (exact) r.log_form = LogCombination{};
    if (x < 2) return r;

    SieveTable sieve(x);
    ArithFnTable f = build_f_from_spec(spec, x);
    if (exact) {
        for (uint32_t p : sieve.primes()) {
            for (uint64_t n = p;; n *= p) {
                r.log_form->add(p, table_ratio(f, x / n, spec.k));
                if (n > x / p) break;
            }
        }
        r.value = r.log_form->evaluate();
    } else {
        NeumaierSum s;
        for (uint32_t p : sieve.primes()) {
            long double lp = std::log((long double)p);
            for (uint64_t n = p;; n *= p) {
                s.add(lp * table_ratio_ld(f, x / n, spec.k));
                if (n > x / p) break;
            }
        }
        r.value = s.value();
    }
    return r;
}

SumResult pi_fk_brute(const FnSpec& spec, uint64_t x, bool exact) {
    require_brute_capacity(x);
    SumResult r;
    r.x = x;
    r.spec = spec;
    r.strategy = Strategy::brute;
    if (exact) r.rational_form = Rational(0);
    if (x < 2) return r;

    SieveTable sieve(x);
    ArithFnTable f = build_f_from_spec(spec, x);
    if (exact) {
        Rational total(0);
        for (uint32_t p : sieve.primes()) total += table_ratio(f, x / p, spec.k);
        r.rational_form = total;
        r.value = to_long_double(total);
    } else {
        NeumaierSum s;
        for (uint32_t p : sieve.primes()) s.add(table_ratio_ld(f, x / p, spec.k));
        r.value = s.value();
    }
    return r;
}

/* ---------------------------------------------------------------------------
   Blocked strategy. With s = [sqrt x], qmax = [x/(s+1)] and n0 = [x/(qmax+1)]
   the ranges n <= n0 and (x/(q+1), x/q] for q = 1..qmax partition [1, x]
   exactly, and on the q-th tail range [x/n] = q.
   --------------------------------------------------------------------------- */

namespace {

struct BlockedLayout {
    uint64_t n0 = 0;
    uint64_t qmax = 0;
    std::vector<uint64_t> breakpoints;  // ascending, = {[x/q] : q = 1..qmax+1}
    std::vector<size_t> index_of_q;     // q -> index into breakpoints
};

BlockedLayout blocked_layout(uint64_t x) {
    BlockedLayout lay;
    uint64_t s = isqrt_u64(x);
    lay.qmax = x / (s + 1);
    lay.n0 = x / (lay.qmax + 1);
    lay.index_of_q.assign(lay.qmax + 2, 0);
    for (uint64_t q = lay.qmax + 1; q >= 1; --q) {
        uint64_t t = x / q;
        if (lay.breakpoints.empty() || lay.breakpoints.back() != t) lay.breakpoints.push_back(t);
        lay.index_of_q[q] = lay.breakpoints.size() - 1;
        if (q == 1) break;
    }
    return lay;
}

void require_blocked_capacity(uint64_t x) {
    if (x > blocked_max_x)
        throw capacity_error("blocked strategy capped at x = " + std::to_string(blocked_max_x));
}

}  // namespace

SumResult psi_fk_blocked(const FnSpec& spec, uint64_t x, bool exact) {
    require_blocked_capacity(x);
    SumResult r;
    r.x = x;
    r.spec = spec;
    r.strategy = Strategy::blocked;
    if (exact) r.log_form = LogCombination{};
    if (x < 2) return r;

    BlockedLayout lay = blocked_layout(x);
    SieveTable sieve(std::max<uint64_t>(isqrt_u64(x) + 2, 2));

    if (!exact) {
        NeumaierSum head;
        for (uint32_t p : sieve.primes()) {
            if (p > lay.n0) break;
            long double lp = std::log((long double)p);
            for (uint64_t n = p; n <= lay.n0; n *= p) {
                head.add(lp * to_long_double(f_at_point(spec, x / n, sieve)));
                if (n > lay.n0 / p) break;
            }
        }
        CheckpointSums cps = checkpoint_scan(x, lay.breakpoints);
        NeumaierSum tail;
        for (uint64_t q = 1; q <= lay.qmax; ++q) {
            long double dpsi = cps.chebyshev_psi[lay.index_of_q[q]] -
                               cps.chebyshev_psi[lay.index_of_q[q + 1]];
            tail.add(to_long_double(f_at_point(spec, q, sieve)) * dpsi);
        }
        r.value = head.value() + tail.value();
        return r;
    }

    // Exact mode: same decomposition, with the tail prime powers enumerated
    // segment by segment and grouped through q = [x/n].
    for (uint32_t p : sieve.primes()) {
        if (p > lay.n0) break;
        for (uint64_t n = p; n <= lay.n0; n *= p) {
            r.log_form->add(p, f_at_point(spec, x / n, sieve));
            if (n > lay.n0 / p) break;
        }
    }
    std::vector<Rational> fq(lay.qmax + 1, Rational(0));
    for (uint64_t q = 1; q <= lay.qmax; ++q) fq[q] = f_at_point(spec, q, sieve);
    for_each_prime_power(lay.n0 + 1, x, [&](uint64_t n, uint64_t p) {
        r.log_form->add(p, fq[x / n]);
    });
    r.value = r.log_form->evaluate();
    return r;
}

SumResult pi_fk_blocked(const FnSpec& spec, uint64_t x, bool exact) {
    require_blocked_capacity(x);
    SumResult r;
    r.x = x;
    r.spec = spec;
    r.strategy = Strategy::blocked;
    if (exact) r.rational_form = Rational(0);
    if (x < 2) return r;

    BlockedLayout lay = blocked_layout(x);
    SieveTable sieve(std::max<uint64_t>(isqrt_u64(x) + 2, 2));

    if (!exact) {
        NeumaierSum head;
        for (uint32_t p : sieve.primes()) {
            if (p > lay.n0) break;
            head.add(to_long_double(f_at_point(spec, x / p, sieve)));
        }
        CheckpointSums cps = checkpoint_scan(x, lay.breakpoints);
        NeumaierSum tail;
        for (uint64_t q = 1; q <= lay.qmax; ++q) {
            uint64_t dpi = cps.prime_pi[lay.index_of_q[q]] - cps.prime_pi[lay.index_of_q[q + 1]];
            if (dpi == 0) continue;
            tail.add(to_long_double(f_at_point(spec, q, sieve)) * (long double)dpi);
        }
        r.value = head.value() + tail.value();
        return r;
    }

    Rational total(0);
    for (uint32_t p : sieve.primes()) {
        if (p > lay.n0) break;
        total += f_at_point(spec, x / p, sieve);
    }
    std::vector<Rational> fq(lay.qmax + 1, Rational(0));
    for (uint64_t q = 1; q <= lay.qmax; ++q) fq[q] = f_at_point(spec, q, sieve);
    for_each_prime_power(lay.n0 + 1, x, [&](uint64_t n, uint64_t p) {
        if (n == p) total += fq[x / n];
    });
    r.rational_form = total;
    r.value = to_long_double(total);
    return r;
}

/* ---------------------------------------------------------------------------
   Prefix sums sum_{n<=x} f(n)/n^k.
   --------------------------------------------------------------------------- */

ExactPrefix::ExactPrefix(const FnSpec& spec, uint64_t x_max)
    : spec_(spec),
      k_(spec.k),
      sieve_(std::max<uint64_t>(x_max, 2)),
      f_(build_f_from_spec(spec, std::max<uint64_t>(x_max, 1))),
      num_(0),
      den_(1) {}

void ExactPrefix::advance_to(uint64_t x) {
    if (x > f_.limit()) throw capacity_error("ExactPrefix: x beyond prepared range");
    if (x < cur_) throw std::invalid_argument("ExactPrefix: x must be non-decreasing");
    for (uint64_t n = cur_ + 1; n <= x; ++n) {
        if (n > 1) {
            MangoldtValue mv = mangoldt(n, sieve_);
            if (mv.is_prime_power) {
                // lcm(1..n) = lcm(1..n-1) * p exactly at prime powers
                BigInt pk;
                mpz_ui_pow_ui(pk.get_mpz_t(), *mv.base_prime, k_);
                den_ *= pk;
                num_ *= pk;
            }
        }
        BigInt nk;
        mpz_ui_pow_ui(nk.get_mpz_t(), n, k_);
        BigInt share = den_ / nk;  // exact: n^k | lcm(1..n)^k
        num_ += bigint_from_int128(f_(n)) * share;
    }
    cur_ = x;
}

Rational ExactPrefix::value() const {
    Rational r(num_, den_);
    r.canonicalize();
    return r;
}

Rational prefix_fk_exact(const FnSpec& spec, uint64_t x) {
    require_brute_capacity(x);
    if (x < 1) throw std::invalid_argument("prefix_fk: x must be >= 1");
    ExactPrefix acc(spec, x);
    acc.advance_to(x);
    return acc.value();
}

long double prefix_fk(const FnSpec& spec, uint64_t x) {
    require_brute_capacity(x);
    if (x < 1) throw std::invalid_argument("prefix_fk: x must be >= 1");
    ArithFnTable f = build_f_from_spec(spec, x);
    NeumaierSum s;
    for (uint64_t n = 1; n <= x; ++n) s.add(table_ratio_ld(f, n, spec.k));
    return s.value();
}

}  // namespace partsum
