#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "partsum/arith.hpp"
#include "partsum/rational.hpp"
#include "partsum/sieve.hpp"

namespace partsum {

/* ---------------------------------------------------------------------------
   psi_{f,k}(x) = sum_{n<=x} Lambda(n) f([x/n]) / [x/n]^k
   pi_{f,k}(x)  = sum_{p<=x}           f([x/p]) / [x/p]^k
   evaluated by two independent strategies that cross-check each other.
   --------------------------------------------------------------------------- */

enum class Strategy { brute, blocked };

// Exact symbolic value of a Lambda-weighted sum: sum over primes p of
// coeff[p] * log p, with exact rational coefficients.
struct LogCombination {
    std::map<uint64_t, Rational> coeff;

    long double evaluate() const;
    void add(uint64_t p, const Rational& c);
    bool operator==(const LogCombination& other) const;
};

struct SumResult {
    long double value = 0.0L;
    // psi-type exact results carry the log combination; pi-type exact results
    // carry one exact rational total.
    std::optional<LogCombination> log_form;
    std::optional<Rational> rational_form;
    uint64_t x = 0;
    FnSpec spec;
    Strategy strategy = Strategy::brute;
};

// Direct loop over prime powers (or primes) up to x, with f tabulated to x by
// Dirichlet convolution. Capacity x <= 10^7; larger x belongs to the blocked
// strategy.
SumResult psi_fk_brute(const FnSpec& spec, uint64_t x, bool exact);
SumResult pi_fk_brute(const FnSpec& spec, uint64_t x, bool exact);

// Blocked evaluator, memory O(sqrt x): below sqrt x the prime powers are
// summed directly with f from point evaluations; above, [x/n] = q < sqrt x
// and each q-block contributes f(q)/q^k times a Chebyshev-psi (or prime
// count) difference taken from one checkpoint scan. Float results are
// bitwise deterministic for any thread count. Exact mode is intended for
// small x where symbolic cross-checks against the brute strategy run.
SumResult psi_fk_blocked(const FnSpec& spec, uint64_t x, bool exact = false);
SumResult pi_fk_blocked(const FnSpec& spec, uint64_t x, bool exact = false);

// Exact f(m)/m^k from the factorization of m (primes up to sqrt(m) must be in
// the sieve). Presets use multiplicativity of g; custom g falls back to
// divisor enumeration against the custom table.
Rational f_at_point(const FnSpec& spec, uint64_t m, const SieveTable& sieve);
Rational f_at_point(const FnSpec& spec, uint64_t m);

// Incremental exact evaluator of sum_{n<=x} f(n)/n^k held over the common
// denominator lcm(1..x)^k. advance_to must be called with ascending x.
class ExactPrefix {
public:
    ExactPrefix(const FnSpec& spec, uint64_t x_max);

    void advance_to(uint64_t x);
    uint64_t current() const { return cur_; }
    Rational value() const;  // canonical

private:
    FnSpec spec_;
    unsigned k_;
    SieveTable sieve_;
    ArithFnTable f_;
    BigInt num_;
    BigInt den_;  // lcm(1..cur)^k
    uint64_t cur_ = 0;
};

// sum_{n<=x} f(n)/n^k; exact mode capacity x <= 10^7 (the reduced denominator
// is on the order of lcm(1..x)^k, so large exact prefixes are expensive).
Rational prefix_fk_exact(const FnSpec& spec, uint64_t x);
long double prefix_fk(const FnSpec& spec, uint64_t x);

}  // namespace partsum
