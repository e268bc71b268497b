#pragma once

#include <string>
#include <vector>

#include "quadanchor/mpoly.hpp"

namespace quadanchor {

// Exact determinant of an integer matrix (fraction-free elimination).
mpz_class integer_det(std::vector<std::vector<mpz_class>> m);

// Exact determinant of a rational matrix.
Rat rational_det(const std::vector<std::vector<Rat>>& m);

// Determinant with polynomial entries. Fraction-free elimination with exact
// division; intended for small matrices (guarded).
RatMPoly poly_det(std::vector<std::vector<RatMPoly>> m);

// Sylvester resultant of p and q eliminating `var`, exact. Throws
// degree_error unless both inputs have positive degree in `var`.
//
// When at most one other variable remains the computation runs through
// integer specialization at distinct points plus exact interpolation, which
// keeps the inner determinants numeric. With two or more remaining
// variables it falls back to the polynomial-entry determinant, so keep
// those inputs small.
RatMPoly resultant(const RatMPoly& p, const RatMPoly& q,
                   const std::string& var);

// Polynomial gcd in at most two variables (primitive remainder sequences),
// returned in integer-primitive form. gcd(0,0) = 0.
RatMPoly mp_gcd(const RatMPoly& p, const RatMPoly& q);

}  // namespace quadanchor
