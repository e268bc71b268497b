#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace quadanchor {

// Exact rational scalar. All symbolic computation in the library runs on
// this type; doubles only appear at the numeric boundary (root finding,
// Newton refinement, report output).
using Rat = mpq_class;

// Parses "p/q", plain integers, and exact decimal strings ("1.1" -> 11/10,
// "-2.5e-1" -> -1/4). Returns nothing for malformed input or zero
// denominators. Whitespace is not accepted.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical "p" or "p/q" form, lossless for round trips.
std::string rat_to_string(const Rat& value);

// Conversion that survives operands far outside double range: the value is
// divided exactly by `scale` before conversion.
double rat_to_double_scaled(const Rat& value, const Rat& scale);

// gcd of |a|,|b| as non-negative integers; gcd(0,0) = 0.
mpz_class int_gcd(const mpz_class& a, const mpz_class& b);
mpz_class int_lcm(const mpz_class& a, const mpz_class& b);

}  // namespace quadanchor
