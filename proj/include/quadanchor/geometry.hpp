#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "quadanchor/rational.hpp"

namespace quadanchor {

enum class Label : int { A = 0, B = 1, C = 2, D = 3 };

inline constexpr std::array<Label, 4> kLabels{Label::A, Label::B, Label::C,
                                              Label::D};

const char* label_name(Label l);
std::optional<Label> label_from(const std::string& s);

struct Point2 {
  Rat x{0};
  Rat y{0};
  bool operator==(const Point2&) const = default;
};

Rat dist2(const Point2& p, const Point2& q);

// Four anchor points with their non-zero target constants (units 1/length^2).
struct Configuration {
  std::array<Point2, 4> anchors{};
  std::array<Rat, 4> constants{};

  const Point2& anchor(Label l) const { return anchors[std::size_t(l)]; }
  Point2& anchor(Label l) { return anchors[std::size_t(l)]; }
  const Rat& constant(Label l) const { return constants[std::size_t(l)]; }
  Rat& constant(Label l) { return constants[std::size_t(l)]; }

  // Throws input_error on coincident anchors or a zero constant.
  void check_basic() const;
};

// Similarity of the plane: forward(P) = M (P - origin) with M = (p q; -q p).
// Exact rational entries; the orthogonal/dilation split is exposed only as
// floating approximations since the scale factor is a square root.
struct PlaneTransform {
  Point2 origin{};
  Rat lin_p{1};
  Rat lin_q{0};

  // Factor multiplying squared distances under forward.
  Rat squared_scale() const { return lin_p * lin_p + lin_q * lin_q; }

  Point2 forward(const Point2& pt) const;
  Point2 inverse(const Point2& pt) const;
  std::pair<std::complex<double>, std::complex<double>> forward_c(
      std::complex<double> x1, std::complex<double> x2) const;
  std::pair<std::complex<double>, std::complex<double>> inverse_c(
      std::complex<double> x1, std::complex<double> x2) const;

  bool is_identity() const { return lin_p == 1 && lin_q == 0 &&
                                    origin.x == 0 && origin.y == 0; }

  double dilation() const;  // positive scale of the forward map
  std::array<std::array<double, 2>, 2> rotation() const;
};

struct ValidationReport {
  bool condition_i_ok = true;   // no collinear anchor triple
  bool condition_ii_ok = true;  // no concurrent circle triple
  std::vector<std::array<Label, 3>> violating_triples;
  std::string details;
  bool ok() const { return condition_i_ok && condition_ii_ok; }
};

// Exact: true iff the signed doubled area of pqr vanishes.
bool collinear(const Point2& p, const Point2& q, const Point2& r);

// Common real point of the three circles |P - T|^2 = 1/k_T for the chosen
// labels, if one exists. Any label with k <= 0 makes the result absent (its
// circle has no real points). The existence decision is exact on the
// rational data; a returned witness always satisfies
// | |P-T|^2 - 1/k_T | <= 1e-10 for all three circles.
std::optional<Point2> triple_circles_concurrent(
    const Configuration& config, const std::array<Label, 3>& triple);

// Tolerance pinned for concurrency witnesses (squared-distance residual).
inline constexpr double kGeoWitnessTol = 1e-10;

ValidationReport validate(const Configuration& config);

// Carry a configuration through a similarity: anchors map forward, each
// constant divides by the squared scale so the system transports solutions.
Configuration transformed(const Configuration& config,
                          const PlaneTransform& t);

// Reference frame: A at the origin, B at (1,0), via an exact rational
// similarity. Throws normalize_error when A = B.
std::pair<Configuration, PlaneTransform> normalize(
    const Configuration& config);

}  // namespace quadanchor
