#pragma once

#include <complex>
#include <string>
#include <vector>

#include "quadanchor/mpoly.hpp"

namespace quadanchor {

using Cx = std::complex<double>;

struct ComplexRoot {
  Cx value;
  int multiplicity = 1;
};

// Dense univariate polynomial over complex doubles, ascending coefficients.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<Cx> ascending);

  // Degree after exact-zero trimming; -1 for the zero polynomial.
  int degree() const { return int(c_.size()) - 1; }
  const std::vector<Cx>& coeffs() const { return c_; }

  Cx eval(Cx z) const;
  // Value, first and second derivative in one Horner pass.
  void eval_all(Cx z, Cx& p, Cx& dp, Cx& ddp) const;
  CPoly derivative() const;

  // Conversion from an exact polynomial in a single variable. Coefficients
  // are divided by the largest magnitude first so enormous exact values
  // survive the trip to double.
  static CPoly from_exact(const RatMPoly& p, const std::string& var);

  // Partial evaluation of a bivariate exact polynomial: fix one variable to
  // a complex value, return the resulting univariate in the kept variable.
  // The same uniform scaling is applied across all coefficients.
  static CPoly specialize(const RatMPoly& p, const std::string& kept,
                          const std::string& fixed, Cx value);

  // Copy with leading coefficients of relative magnitude <= rel dropped.
  // Degree reduction under specialization is a caller decision, so the
  // root finder never trims on its own.
  CPoly dropped_tiny_leading(double rel) const;

 private:
  std::vector<Cx> c_;
};

struct RootFindResult {
  std::vector<ComplexRoot> roots;
  // Relative coefficient error of the monic product rebuilt from the
  // computed roots. Diagnostic; meaningful mainly when roots are simple.
  double reconstruction_error = 0.0;
  // Degree actually solved after trimming numerically-zero leading terms.
  int degree_used = 0;
  // Working precision of the pass that produced the roots; 53 is the plain
  // double path.
  int precision_bits = 53;
};

// All complex roots via a simultaneous (Aberth) iteration followed by a
// Newton polish. Roots closer together than cluster_tol*(1+|z|) are merged
// into one root with a multiplicity count and re-polished with the
// multiple-root Newton variant.
//
// Requires degree >= 1 (degree_error) and a leading coefficient of
// magnitude > 1e-14 times the largest coefficient (leading_coeff_error);
// use dropped_tiny_leading first when degree reduction is intended.
RootFindResult univariate_roots(const CPoly& p, double cluster_tol = 1e-6);

// Root finding from exact rational coefficients. The plain double pass runs
// first; if its monic rebuild misses or it loses degree (heavy cancellation
// can make a polynomial numerically zero on whole annuli, where the double
// iteration settles on noise), the iteration is redone in GMP floats with
// enough bits to separate the roots and the results are rounded back to
// double. Exact input is square-free in the intended callers, so the
// extended pass merges only double-rounding collisions, not cluster_tol
// neighborhoods.
RootFindResult univariate_roots_exact(const RatMPoly& p,
                                      const std::string& var,
                                      double cluster_tol = 1e-6);

// A section of a bivariate with its coefficients evaluated in GMP floats
// and rounded to double once at the end. Horner in plain double can cancel
// away most significant digits of a section coefficient; working precision
// sidesteps that. Leading coefficients indistinguishable from the roundoff
// of their own evaluation are dropped; genuinely tiny ones are kept, since
// under a dilation they can sit many orders below the section's largest
// coefficient and still govern its outer roots. Coefficients come back
// normalized so the largest magnitude is 1; max_rel records that magnitude
// relative to the largest exact coefficient of the bivariate (the scale
// specialize divides by), 0 when the whole section is roundoff.
struct SectionImage {
  std::vector<Cx> coeffs;
  double max_rel = 0.0;
};
SectionImage specialize_extended(const RatMPoly& p, const std::string& kept,
                                 const std::string& fixed, Cx value);

// Extended-precision counterpart of specialize + univariate_roots: the
// section of a bivariate at fixed = value, root-found in GMP floats so a
// section the double iteration cannot settle still yields candidates. The
// one rounding is the double sweep value itself. Degree semantics match
// specialize_extended; throws degree_error when nothing of positive degree
// survives the noise trim.
RootFindResult section_roots_exact(const RatMPoly& p, const std::string& kept,
                                   const std::string& fixed, Cx value);

}  // namespace quadanchor
