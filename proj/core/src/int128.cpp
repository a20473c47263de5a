#include "partsum/int128.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "partsum/errors.hpp"

namespace partsum {

std::string to_string(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    UInt128 u = neg ? UInt128(0) - UInt128(v) : UInt128(v);
    std::string s;
    while (u > 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

Int128 parse_int128(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("empty integer literal: '" + s + "'");
    UInt128 u = 0;
    const UInt128 limit = neg ? (UInt128(1) << 127) : (UInt128(1) << 127) - 1;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in integer literal: '" + s + "'");
        UInt128 d = UInt128(c - '0');
        if (u > (limit - d) / 10) throw capacity_error("integer literal exceeds 128 bits: '" + s + "'");
        u = u * 10 + d;
    }
    return neg ? -Int128(u) : Int128(u);
}

long double to_long_double(Int128 v) {
    bool neg = v < 0;
    UInt128 u = neg ? UInt128(0) - UInt128(v) : UInt128(v);
    long double r = (long double)(uint64_t)(u >> 64) * 0x1p64L + (long double)(uint64_t)u;
    return neg ? -r : r;
}

uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = (uint64_t)std::sqrt((double)n);
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

}  // namespace partsum
