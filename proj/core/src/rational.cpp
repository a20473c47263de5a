#include "partsum/rational.hpp"

#include <cmath>

namespace partsum {

BigInt bigint_from_int128(Int128 v) {
    bool neg = v < 0;
    UInt128 u = neg ? UInt128(0) - UInt128(v) : UInt128(v);
    BigInt z((uint64_t)(u >> 64));
    z <<= 64;
    z += (uint64_t)u;
    return neg ? BigInt(-z) : z;
}

long double to_long_double(const BigInt& v) {
    signed long exp = 0;
    double m = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::ldexp((long double)m, (int)exp);
}

long double to_long_double(const Rational& q) {
    if (sgn(q) == 0) return 0.0L;
    signed long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::ldexp((long double)mn / (long double)md, (int)(en - ed));
}

}  // namespace partsum
