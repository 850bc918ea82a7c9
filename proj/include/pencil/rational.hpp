#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pencil {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "3", "-7", "22/7" (optional surrounding whitespace). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" or "p" text.
std::string to_string(const Rational& q);

/// Exact square root in Q, if one exists.
std::optional<Rational> rational_sqrt(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

static_assert(sizeof(long) == sizeof(long long), "gmpxx conversions assume a 64-bit long");
inline Integer big(long long v) { return Integer(static_cast<long>(v)); }
inline Rational ratio(long long num, long long den = 1) {
  Rational q(big(num), big(den));
  q.canonicalize();
  return q;
}

}  // namespace pencil
