#pragma once

#include <cstdint>
#include <string>

namespace partsum {

// Exact signed 128-bit integers hold every table value we need:
// |f(n)| <= N^{k+2} stays below 2^127 for N <= 10^7, k <= 3.
using Int128 = __int128;
using UInt128 = unsigned __int128;

// Checked arithmetic; returns true on overflow.
inline bool add_overflows(Int128 a, Int128 b, Int128& out) {
    return __builtin_add_overflow(a, b, &out);
}
inline bool mul_overflows(Int128 a, Int128 b, Int128& out) {
    return __builtin_mul_overflow(a, b, &out);
}

std::string to_string(Int128 v);

// Parses an optionally signed decimal integer. Throws std::invalid_argument
// on malformed input and capacity_error if the value exceeds 128 bits.
Int128 parse_int128(const std::string& s);

long double to_long_double(Int128 v);

uint64_t isqrt_u64(uint64_t n);

}  // namespace partsum
