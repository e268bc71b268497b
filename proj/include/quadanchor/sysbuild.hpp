#pragma once

#include <array>
#include <complex>
#include <vector>

#include "quadanchor/geometry.hpp"
#include "quadanchor/mpoly.hpp"

namespace quadanchor {

using CPoint2 = std::array<std::complex<double>, 2>;

// One anchor's distance transfer function as an exact quotient in (y1, y2):
//
//   numerator / denominator  =  |Y-T|^2 / (k |Y-T|^2 - 1)  -  |T|^2,
//
// so that numerator/denominator + |T|^2 equals |X-T|^2 for any solution
// pair (X, Y). The denominator is exactly k |Y-T|^2 - 1.
struct GammaFn {
  Label label{Label::A};
  Point2 anchor{};
  Rat k{0};
  RatMPoly numerator;
  RatMPoly denominator;

  // Quotient value at Y. Throws pole_error when the denominator vanishes
  // (relative threshold 1e-12 against 1 + |k||Y-T|^2).
  std::complex<double> eval(std::complex<double> y1,
                            std::complex<double> y2) const;
};

// The two bivariate constraints every solution's Y must satisfy, with all
// quotient denominators multiplied through. cleared_factors holds the four
// denominators d_T = k_T |Y-T|^2 - 1 in label order; the determinant
// constraint was cleared by d_A d_B d_C d_D and the circle constraint by
// (d_A d_B d_C)^2. Zeros introduced by those factors are spurious and get
// filtered downstream. delta is twice the signed area of triangle ABC.
struct ReducedSystem {
  RatMPoly det_constraint;
  RatMPoly circle_constraint;
  std::vector<RatMPoly> cleared_factors;
  Rat delta;
};

// Polynomial relations among the four squared distances g_T = |X-T|^2,
// treated as independent coordinates (variables gA, gB, gC, gD). Requires
// the reference frame A = (0,0), B = (b1, 0). H eliminates Y entirely from
// the A-anchor equation (degree 6 in gA, gB, gC); F is the pairwise
// elimination across the C and D anchors (multilinear, degree at most 4);
// linear_relation and quadric_relation tie the g_T to a common X.
struct GammaSystem {
  RatMPoly H;
  RatMPoly F;
  RatMPoly linear_relation;
  RatMPoly quadric_relation;
};

// The four quartic equations k_T |X-T|^2 |Y-T|^2 - |X-T|^2 - |Y-T|^2 in
// variables (x1, x2, y1, y2), label order.
std::array<RatMPoly, 4> build_quartic_system(const Configuration& config);

GammaFn gamma(const Configuration& config, Label label);

// Unique X paired with Y, from the 2x2 Cramer solve over anchors A, B, C.
// Throws collinear_error when A, B, C span no area and pole_error when Y
// sits on a cleared-denominator zero of one of the three quotients.
CPoint2 recover_X(const Configuration& config, const CPoint2& Y);

// Throws collinear_error when A, B, C are collinear.
ReducedSystem build_reduced_system(const Configuration& config);

// Throws normalize_error unless A = (0,0), B = (b1,0) with b1 != 0, and
// both remaining anchors lie off the x-axis.
GammaSystem build_gamma_system(const Configuration& config);

}  // namespace quadanchor
