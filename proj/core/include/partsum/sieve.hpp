#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace partsum {

// Per-integer number-theoretic tables up to a fixed limit, built in a single
// linear (Euler) sieve pass so that phi, sigma and mu come from their
// multiplicative recurrences and stay exact integers.
//
// Memory: ~17 bytes per integer retained (plus ~4 transient during the
// build), so limit = 10^8 needs about 1.7 GB. Immutable after construction
// and safe to share across threads.
class SieveTable {
public:
    // Hard capacity. 10^8 is the supported working size; anything past
    // max_limit is refused outright instead of silently truncated.
    static constexpr uint64_t max_limit = 2'000'000'000ULL;

    explicit SieveTable(uint64_t limit);

    uint64_t limit() const { return limit_; }
    // Smallest prime factor of n, 2 <= n <= limit. spf(p) == p iff p prime.
    uint32_t spf(uint64_t n) const { return spf_[n]; }
    int mu(uint64_t n) const { return mu_[n]; }
    uint64_t phi(uint64_t n) const { return phi_[n]; }
    uint64_t sigma(uint64_t n) const { return sigma_[n]; }
    bool is_prime(uint64_t n) const { return n >= 2 && spf_[n] == n; }
    const std::vector<uint32_t>& primes() const { return primes_; }

private:
    uint64_t limit_ = 0;
    std::vector<uint32_t> spf_;
    std::vector<int8_t> mu_;
    std::vector<uint32_t> phi_;
    std::vector<uint64_t> sigma_;
    std::vector<uint32_t> primes_;
};

SieveTable build_sieve(uint64_t limit);

// Lambda(n) = log(base_prime) when n is a prime power, 0 otherwise. The log
// itself is taken on demand; nothing floating is stored per integer.
struct MangoldtValue {
    std::optional<uint64_t> base_prime;
    bool is_prime_power = false;

    long double lambda() const;
};

MangoldtValue mangoldt(uint64_t n, const SieveTable& table);

// Chebyshev psi and prime counts accumulated at the requested breakpoints
// during one segmented pass over [1, x].
struct CheckpointSums {
    uint64_t x = 0;
    std::vector<uint64_t> breakpoints;        // strictly increasing, <= x
    std::vector<long double> chebyshev_psi;   // sum_{n<=t} Lambda(n)
    std::vector<uint64_t> prime_pi;           // #{p <= t}, exact
};

struct ScanConfig {
    // L2-resident segments by default.
    uint64_t segment_size = 1u << 20;
};

// Single segmented pass over [1, x]. Segments may be processed in parallel;
// per-segment Lambda mass is kept as 2^-64 fixed point in 128-bit integers
// and merged in ascending order, so the result is bitwise identical for any
// thread count and any segment size.
CheckpointSums checkpoint_scan(uint64_t x, std::vector<uint64_t> breakpoints,
                               ScanConfig cfg = {});

// Visits (n, base_prime) for every prime power n in [lo, hi], ascending.
// Serial; builds its own base primes up to sqrt(hi).
void for_each_prime_power(uint64_t lo, uint64_t hi,
                          const std::function<void(uint64_t n, uint64_t p)>& visit,
                          uint64_t segment_size = 1u << 20);

}  // namespace partsum
