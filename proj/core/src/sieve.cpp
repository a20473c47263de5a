#include "partsum/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "partsum/errors.hpp"
#include "partsum/int128.hpp"
#include "partsum/parallel.hpp"

namespace partsum {

/* ---------------------------------------------------------------------------
   Linear sieve. Each composite m is crossed off exactly once as m = p * n
   with p = spf(m), which is what makes the multiplicative recurrences work:
     p ∤ n:  mu(m) = -mu(n), phi(m) = phi(n)(p-1), sigma(m) = sigma(n)(p+1)
     p | n:  mu(m) = 0,      phi(m) = phi(n)p,
             sigma(m) = sigma(m / p^a) * (p^{a+1} - 1)/(p - 1)
   where p^a is the full p-power in m, tracked in a transient array.
   --------------------------------------------------------------------------- */

SieveTable::SieveTable(uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
    if (limit > max_limit)
        throw capacity_error("sieve limit " + std::to_string(limit) + " exceeds capacity " +
                             std::to_string(max_limit));
    limit_ = limit;
    spf_.assign(limit + 1, 0);
    mu_.assign(limit + 1, 0);
    phi_.assign(limit + 1, 0);
    sigma_.assign(limit + 1, 0);
    std::vector<uint32_t> ppow(limit + 1, 0);  // p-power part w.r.t. spf, build-time only

    mu_[1] = 1;
    phi_[1] = 1;
    sigma_[1] = 1;
    ppow[1] = 1;
    primes_.reserve((size_t)(limit > 100 ? (double)limit / (std::log((double)limit) - 1.1) : 32));

    for (uint64_t n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = (uint32_t)n;
            primes_.push_back((uint32_t)n);
            mu_[n] = -1;
            phi_[n] = (uint32_t)(n - 1);
            sigma_[n] = n + 1;
            ppow[n] = (uint32_t)n;
        }
        for (uint32_t p : primes_) {
            if (p > spf_[n]) break;
            uint64_t m = (uint64_t)p * n;
            if (m > limit) break;
            spf_[m] = p;
            if (p == spf_[n]) {
                ppow[m] = (uint32_t)((uint64_t)ppow[n] * p);
                mu_[m] = 0;
                phi_[m] = (uint32_t)((uint64_t)phi_[n] * p);
                uint64_t core = m / ppow[m];
                sigma_[m] = sigma_[core] * (((uint64_t)ppow[m] * p - 1) / (p - 1));
                break;
            }
            ppow[m] = p;
            mu_[m] = (int8_t)(-mu_[n]);
            phi_[m] = (uint32_t)((uint64_t)phi_[n] * (p - 1));
            sigma_[m] = sigma_[n] * (p + 1);
        }
    }
}

SieveTable build_sieve(uint64_t limit) { return SieveTable(limit); }

long double MangoldtValue::lambda() const {
    return is_prime_power ? std::log((long double)*base_prime) : 0.0L;
}

MangoldtValue mangoldt(uint64_t n, const SieveTable& table) {
    if (n < 1 || n > table.limit())
        throw std::out_of_range("mangoldt: n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(table.limit()) + "]");
    MangoldtValue v;
    if (n == 1) return v;
    uint64_t p = table.spf(n);
    while (n % p == 0) n /= p;
    if (n == 1) {
        v.base_prime = p;
        v.is_prime_power = true;
    }
    return v;
}

/* ---------------------------------------------------------------------------
   Segmented pass machinery.
   --------------------------------------------------------------------------- */

namespace {

constexpr uint64_t scan_max_x = 1'000'000'000ULL;

// Lambda(p^a) = log p quantized to 2^-64 fixed point. The quantized value is
// a pure function of p, so sums of these integers are independent of the
// order and grouping of the additions.
Int128 lambda_fixed(uint64_t p) {
    long double l = std::log((long double)p);
    return (Int128)(l * 0x1p64L + 0.5L);
}

std::vector<uint32_t> base_primes_to(uint64_t bound) {
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

// Marks composites in [lo, hi]; on return flags[i] != 0 iff lo + i is prime.
void sieve_segment(uint64_t lo, uint64_t hi, const std::vector<uint32_t>& base_primes,
                   std::vector<uint8_t>& flags) {
    uint64_t len = hi - lo + 1;
    flags.assign(len, 1);
    if (lo == 1) flags[0] = 0;
    if (lo == 0) flags[0] = 0;  // never hit: callers start at 1
    for (uint32_t p : base_primes) {
        uint64_t pp = (uint64_t)p * p;
        if (pp > hi) break;
        uint64_t start = std::max(pp, ((lo + p - 1) / p) * (uint64_t)p);
        for (uint64_t m = start; m <= hi; m += p) flags[m - lo] = 0;
    }
}

// Prime powers p^a, a >= 2, inside [lo, hi], ascending.
std::vector<std::pair<uint64_t, uint64_t>> higher_prime_powers(
    uint64_t lo, uint64_t hi, const std::vector<uint32_t>& base_primes) {
    std::vector<std::pair<uint64_t, uint64_t>> out;  // (n, p)
    for (uint32_t p : base_primes) {
        if ((uint64_t)p * p > hi) break;
        uint64_t q = (uint64_t)p * p;
        while (true) {
            if (q >= lo) out.emplace_back(q, p);
            if (q > hi / p) break;
            q *= p;
            if (q > hi) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct SegmentPart {
    Int128 psi_fp = 0;
    uint64_t pi = 0;
    // (breakpoint index, psi fixed-point prefix within segment, pi prefix)
    std::vector<std::tuple<size_t, Int128, uint64_t>> at_breakpoints;
};

}  // namespace

CheckpointSums checkpoint_scan(uint64_t x, std::vector<uint64_t> breakpoints, ScanConfig cfg) {
    if (x < 1) throw std::invalid_argument("checkpoint_scan: x must be >= 1");
    if (x > scan_max_x)
        throw capacity_error("checkpoint_scan: x = " + std::to_string(x) +
                             " beyond segmented-sieve capacity " + std::to_string(scan_max_x));
    if (cfg.segment_size < 64) throw std::invalid_argument("segment_size too small");
    for (size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] < 1 || breakpoints[i] > x)
            throw std::invalid_argument("checkpoint_scan: breakpoint outside [1, x]");
        if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
            throw std::invalid_argument("checkpoint_scan: breakpoints must be strictly increasing");
    }

    CheckpointSums out;
    out.x = x;
    out.breakpoints = std::move(breakpoints);
    out.chebyshev_psi.assign(out.breakpoints.size(), 0.0L);
    out.prime_pi.assign(out.breakpoints.size(), 0);

    const std::vector<uint32_t> base_primes = base_primes_to(isqrt_u64(x));
    const uint64_t seg = cfg.segment_size;
    const size_t n_segs = (size_t)((x + seg - 1) / seg);
    std::vector<SegmentPart> parts(n_segs);

    parallel_for_chunks(n_segs, [&](size_t si) {
        uint64_t lo = 1 + (uint64_t)si * seg;
        uint64_t hi = std::min(x, lo + seg - 1);
        SegmentPart part;

        std::vector<uint8_t> flags;
        sieve_segment(lo, hi, base_primes, flags);
        auto powers = higher_prime_powers(lo, hi, base_primes);

        // breakpoints inside [lo, hi]
        const auto& bps = out.breakpoints;
        size_t bpi = (size_t)(std::lower_bound(bps.begin(), bps.end(), lo) - bps.begin());

        size_t pw = 0;
        for (uint64_t n = lo; n <= hi; ++n) {
            if (flags[n - lo]) {
                part.psi_fp += lambda_fixed(n);
                part.pi += 1;
            } else if (pw < powers.size() && powers[pw].first == n) {
                part.psi_fp += lambda_fixed(powers[pw].second);
                ++pw;
            }
            while (bpi < bps.size() && bps[bpi] == n) {
                part.at_breakpoints.emplace_back(bpi, part.psi_fp, part.pi);
                ++bpi;
            }
        }
        parts[si] = std::move(part);
    });

    // Ascending merge; integer additions, so exact under any schedule above.
    Int128 run_fp = 0;
    uint64_t run_pi = 0;
    for (const SegmentPart& part : parts) {
        for (const auto& [bpi, fp, pi] : part.at_breakpoints) {
            out.chebyshev_psi[bpi] = to_long_double(run_fp + fp) * 0x1p-64L;
            out.prime_pi[bpi] = run_pi + pi;
        }
        run_fp += part.psi_fp;
        run_pi += part.pi;
    }
    return out;
}

void for_each_prime_power(uint64_t lo, uint64_t hi,
                          const std::function<void(uint64_t n, uint64_t p)>& visit,
                          uint64_t segment_size) {
    if (lo < 1) lo = 1;
    if (lo > hi) return;
    const std::vector<uint32_t> base_primes = base_primes_to(isqrt_u64(hi));
    std::vector<uint8_t> flags;
    for (uint64_t slo = lo; slo <= hi; slo += segment_size) {
        uint64_t shi = std::min(hi, slo + segment_size - 1);
        sieve_segment(slo, shi, base_primes, flags);
        auto powers = higher_prime_powers(slo, shi, base_primes);
        size_t pw = 0;
        for (uint64_t n = slo; n <= shi; ++n) {
            if (flags[n - slo]) {
                visit(n, n);
            } else if (pw < powers.size() && powers[pw].first == n) {
                visit(n, powers[pw].second);
                ++pw;
            }
        }
        if (shi == hi) break;  // avoid slo overflow at the top of the range
    }
}

}  // namespace partsum
