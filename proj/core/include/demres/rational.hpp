#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace demres {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonicalized num/den.
Rational make_rational(long num, long den = 1);

/// Always "numerator/denominator", e.g. "6/1", "-3/4".
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" with optional sign.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }

}  // namespace demres
