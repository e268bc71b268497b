#pragma once

#include <vector>

#include "quadanchor/geometry.hpp"
#include "quadanchor/sysbuild.hpp"

namespace quadanchor {

struct ExamplePair {
  CPoint2 X{};
  CPoint2 Y{};
};

// Unit-square anchors with k = 11/10 everywhere: 24 isolated pairs whose
// coordinates have nested-radical closed forms.
Configuration example_square();

// Four collinear anchors with mirrored constants -2/3, 2/3: an infinite
// family supported on the second coordinate axis.
Configuration example_collinear();

// The 24 pairs of the square example, radical closed forms evaluated in
// double precision: 16 real on the two axes, 8 purely imaginary.
std::vector<ExamplePair> example_square_pairs();

// n points of the collinear example's family, lifted from its plane curve
// 2 x^2 y^2 + 5 (x^2 + y^2) + 8 = 0: real x on a grid, y on the imaginary
// branch, embedded as X = (0, x), Y = (0, y).
std::vector<ExamplePair> example_collinear_lifts(int n);

}  // namespace quadanchor
