#pragma once

namespace partsum {

/* ---------------------------------------------------------------------------
   Trigonometric approximation of the sawtooth psi(t) = {t} - 1/2 with the
   kernel Phi(u) = pi u (1 - |u|) cot(pi u) + |u|, and the Fejer-kernel bound
   on the remainder.
   --------------------------------------------------------------------------- */

// {t} - 1/2 with {t} in [0, 1); at integers {t} = 0, so psi = -1/2.
long double sawtooth(long double t);

// Phi(u) for |u| < 1. Removable singularities at u = 0 (-> 1) and |u| = 1
// (-> 0) are handled by short series expansions near the edges.
long double phi_kernel(long double u);

// -sum_{h=1}^{H} Phi(h/(H+1)) sin(2 pi h t) / (pi h); the approximation whose
// remainder the Fejer bound controls.
long double vaaler_approx(long double t, unsigned h_max);

// (1/(2H+2)) sum_{|h|<=H} (1 - |h|/(H+1)) e(ht), evaluated in closed form as
// (1/(2(H+1)^2)) (sin(pi (H+1) t)/sin(pi t))^2 for non-integer t and 1/2 at
// integers. Always nonnegative.
long double fejer_bound(long double t, unsigned h_max);

// Same kernel by direct 2H+1-term summation; used to cross-check the closed
// form.
long double fejer_bound_direct(long double t, unsigned h_max);

struct VaalerCheck {
    long double t = 0.0L;
    unsigned h_max = 1;
    long double sawtooth = 0.0L;
    long double approx = 0.0L;
    long double remainder = 0.0L;  // sawtooth - approx
    long double bound = 0.0L;
};

// Populates a VaalerCheck and enforces |remainder| <= bound (+1e-12 float
// slack) at non-integer t. At integers the sawtooth jumps and the check is an
// equality edge, reported but not enforced.
VaalerCheck check_bound(long double t, unsigned h_max);

}  // namespace partsum
