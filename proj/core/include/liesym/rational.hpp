#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace liesym {

using Rational = mpq_class;
using Integer = mpz_class;

/// Builds a canonical p/q.
Rational make_rational(long num, long den = 1);

bool is_integer(const Rational& r);
Integer floor_of(const Rational& r);

/// Exact r-th power of a rational when the result is rational.
/// Integer exponents always succeed (except 0^negative).
std::optional<Rational> exact_power(const Rational& base, const Rational& exponent);

/// r^n for integer n; throws DegenerateExpression for 0^negative.
Rational int_power(const Rational& base, long n);

/// Parses "3", "-7", "3/4", "-3/4".
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& r);

}  // namespace liesym
