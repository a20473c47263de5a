#pragma once

#include <cmath>

namespace partsum {

// Neumaier-compensated accumulator in extended precision. Serial use only;
// merging two accumulators goes through add(other.value()).
struct NeumaierSum {
    long double sum = 0.0L;
    long double comp = 0.0L;

    void add(long double term) {
        long double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    long double value() const { return sum + comp; }
};

// ipow for small integer exponents in extended precision.
inline long double powi(long double base, unsigned e) {
    long double r = 1.0L;
    while (e > 0) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace partsum
