#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "partsum/arith.hpp"

namespace partsum {

/* ---------------------------------------------------------------------------
   Asymptotic constants and predicted main terms / error envelopes.

   Iterated logarithms throughout: log2 x = log log x, log3 x = log log log x.
   --------------------------------------------------------------------------- */

struct ConstantEstimate {
    long double value = 0.0L;
    uint64_t truncation_n = 0;
    long double tail_bound = 0.0L;
    // Label of a product/quotient-of-zeta identity usable as an independent
    // oracle, when one is known.
    std::optional<std::string> closed_form;
};

// C_{f,k} = sum_{n>=1} g(n)/n^{k+2}, truncated at the smallest N whose
// integral-comparison tail bound drops below epsilon. Majorants:
// sigma(n) <= n(1 + log n), phi(n) <= n, |mu(n)| <= 1; custom g needs
// spec.g_majorant (|g(n)| <= c n^a with a < k+1) and a table long enough.
ConstantEstimate constant_cfk(const FnSpec& spec, double epsilon);

// The same truncated sum at an explicitly chosen N (tail-bound soundness
// checks recompute at 2N).
long double cfk_truncated_sum(const FnSpec& spec, uint64_t n_trunc);

// H_{g,k} with sum_{n<=x} |g(n)|/n^k = H x + O(x/r3(x)). Exact closed forms
// for the presets: pi^2/6 (upsilon), 0 (vartheta), 6/pi^2 (rho).
ConstantEstimate constant_hgk(const FnSpec& spec);

// Explicit numeric fit of H over a geometric grid, for custom g. Not a
// certified value; tail_bound reports the worst relative deviation seen.
ConstantEstimate fit_hgk(const FnSpec& spec, uint64_t x_max, unsigned points = 10);

// Best available C_{f,k} for main terms: zeta closed forms for the presets,
// a truncated sum otherwise. Cached per preset.
long double cfk_reference(const FnSpec& spec);

// zeta(s) for real s >= 2 by Euler-Maclaurin, certified below 1e-13.
long double zeta_oracle(long double s);

// C_{f,k} x log x.
long double main_term_psi(const FnSpec& spec, long double x);

// Four-term error envelopes. window_violated, when given, reports a z outside
// [(log x)^B, x^{1/12}] with B = 2A + 8.
long double envelope_psi(const FnSpec& spec, long double x, long double z, double a_param,
                         bool* window_violated = nullptr);
long double envelope_pi(const FnSpec& spec, long double x, long double z, double a_param,
                        bool* window_violated = nullptr);
std::array<long double, 4> envelope_psi_terms(const FnSpec& spec, long double x, long double z,
                                              double a_param);
std::array<long double, 4> envelope_pi_terms(const FnSpec& spec, long double x, long double z,
                                             double a_param);

// Sandwich coefficients for pi_{f,k}: lower = (1/3) C x log2 x,
// upper = (1/3)(C + 2L) x log2 x. Requires spec.L_bound.
std::pair<long double, long double> sandwich_pi(const FnSpec& spec, long double x);

// N0 = exp(B (log x)^{2/3} (log2 x)^{1/3}), x >= 10.
long double n0_threshold(long double x, double b);

// Smallest admissible B for a given A: B = 2A + 8.
double min_b_for(double a_param);

enum class PredictionKind { psi_main, pi_sandwich, corollary };

struct Prediction {
    long double x = 0.0L;
    long double main = 0.0L;
    long double envelope = 0.0L;  // x * Upsilon(x, z)
    PredictionKind kind = PredictionKind::psi_main;
    double z = 1.0;
    double a_param = 1.0;
    std::optional<double> l_bound;
};

Prediction predict_psi(const FnSpec& spec, long double x, double z, double a_param);
Prediction predict_pi(const FnSpec& spec, long double x, double z, double a_param);

}  // namespace partsum
