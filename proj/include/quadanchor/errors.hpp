#pragma once

#include <stdexcept>

namespace quadanchor {

// Malformed or out-of-domain caller input (bad anchors, bad constants,
// unparseable numbers).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An elimination step was asked to work with respect to a variable the
// polynomial is constant in.
struct degree_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric root finding refused: leading coefficient too small relative to
// the rest, so the float-side degree is ambiguous.
struct leading_coeff_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation of a quotient at a pole of its denominator.
struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration cannot be brought to the reference frame (coincident
// anchors or similar degeneracies).
struct normalize_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The Cramer frame degenerates: the anchor triple spans no area.
struct collinear_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace quadanchor
