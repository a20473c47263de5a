#pragma once

#include <gmpxx.h>

#include "partsum/int128.hpp"

namespace partsum {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt bigint_from_int128(Int128 v);

// Conversions keep ~53 bits of the mantissa (mpz_get_d_2exp under the hood),
// ample for every floating tolerance in this project.
long double to_long_double(const BigInt& v);
long double to_long_double(const Rational& q);

}  // namespace partsum
