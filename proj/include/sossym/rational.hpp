#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace sossym {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);

/// Parses "p/q" or "p" (optional leading sign). Throws std::invalid_argument
/// on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& x) { return sgn(x); }

/// p/q in lowest terms. The two-argument mpq_class constructor does not
/// reduce, and GMP arithmetic assumes reduced operands, so every quotient of
/// integers goes through here. Throws std::invalid_argument when q == 0.
Rational ratio(const Integer& p, const Integer& q);

/// Display-only approximation.
inline double approx(const Rational& x) { return x.get_d(); }

/// 2^e as an exact rational (e may be negative).
Rational pow2(long e);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace sossym
