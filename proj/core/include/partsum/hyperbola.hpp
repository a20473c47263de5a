#pragma once

#include <cstdint>

#include "partsum/arith.hpp"
#include "partsum/floorsum.hpp"
#include "partsum/rational.hpp"

namespace partsum {

/* ---------------------------------------------------------------------------
   Hyperbola decomposition of sum_{n<=x} f(n)/n^k = sum_{dm<=x} (g(d)/d^k) m:
     S1 = sum_{d<=x/z} (g(d)/d^k) T([x/d])
     S2 = sum_{m<=z} m sum_{d<=x/m} g(d)/d^k
     S3 = (sum_{d<=x/z} g(d)/d^k) T([z]),     T(y) = y(y+1)/2
   The identity S1 + S2 - S3 = prefix holds exactly for every real z in
   [1, x^{1/3}] and is checked as exact rationals.
   --------------------------------------------------------------------------- */

struct STerms {
    Rational s1, s2, s3;
};

struct HyperbolaReport {
    uint64_t x = 0;
    double z = 1.0;
    Rational s1, s2, s3;
    Rational lhs;             // prefix sum; equals s1 + s2 - s3 exactly
    long double theta = 0.0L;      // Theta_g(x, z)
    long double main_term = 0.0L;  // (1/2) C_{f,k} x^2
    long double residual = 0.0L;   // lhs - main_term + theta
};

enum class SumKind { psi, pi };

// Reusable engine: one g table, one f table and one incremental prefix per
// spec. verify() must be called with non-decreasing x.
class HyperbolaEngine {
public:
    HyperbolaEngine(const FnSpec& spec, uint64_t x_max);

    STerms s_terms(uint64_t x, double z) const;
    long double theta(long double x, double z) const;
    HyperbolaReport verify(uint64_t x, double z);

    const SieveTable& sieve() const { return sieve_; }

private:
    FnSpec spec_;
    unsigned k_;
    SieveTable sieve_;
    ArithFnTable g_;
    ExactPrefix prefix_;
    BigInt lcm_;        // lcm(1..lcm_x_)
    uint64_t lcm_x_ = 1;

    void advance_lcm(uint64_t x);
    STerms s_terms_with_den(uint64_t x, double z, const BigInt& den) const;
};

// One-shot wrappers.
STerms s_terms(const FnSpec& spec, uint64_t x, double z);
HyperbolaReport verify_identity(const FnSpec& spec, uint64_t x, double z);

// Theta_g(x, z) = x sum_{d<=x/z} (g(d)/d^{k+1}) psi(x/d) with the exact
// sawtooth psi(t) = {t} - 1/2.
long double theta_g(const FnSpec& spec, long double x, double z);

// Finite diagnostic sums of Proposition-style shifted Theta values:
//   psi kind: sum_{N0 < n <= x^{1/lambda}} Lambda(n) Theta_g(x/n - delta, z)
//   pi  kind: same over primes, weight 1.
// N0 = exp(B (log x)^{2/3} (loglog x)^{1/3}); empty range returns 0.
long double theta_diagnostic(const FnSpec& spec, long double x, double z, int delta,
                             double lambda, SumKind kind, double b = 10.0);

}  // namespace partsum
