#include "quadanchor/geometry.hpp"

#include <cmath>
#include <sstream>

#include "quadanchor/errors.hpp"

namespace quadanchor {

const char* label_name(Label l) {
  switch (l) {
    case Label::A: return "A";
    case Label::B: return "B";
    case Label::C: return "C";
    case Label::D: return "D";
  }
  return "?";
}

std::optional<Label> label_from(const std::string& s) {
  if (s == "A" || s == "a") return Label::A;
  if (s == "B" || s == "b") return Label::B;
  if (s == "C" || s == "c") return Label::C;
  if (s == "D" || s == "d") return Label::D;
  return std::nullopt;
}

Rat dist2(const Point2& p, const Point2& q) {
  Rat dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}

void Configuration::check_basic() const {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (anchors[i] == anchors[j]) {
        std::ostringstream os;
        os << "anchors " << label_name(Label(int(i))) << " and "
           << label_name(Label(int(j))) << " coincide";
        throw input_error(os.str());
      }
  for (std::size_t i = 0; i < 4; ++i)
    if (constants[i] == 0) {
      std::ostringstream os;
      os << "constant k_" << label_name(Label(int(i))) << " must be non-zero";
      throw input_error(os.str());
    }
}

Point2 PlaneTransform::forward(const Point2& pt) const {
  Rat ux = pt.x - origin.x, uy = pt.y - origin.y;
  return Point2{lin_p * ux + lin_q * uy, -lin_q * ux + lin_p * uy};
}

Point2 PlaneTransform::inverse(const Point2& pt) const {
  Rat det = squared_scale();
  Rat ux = (lin_p * pt.x - lin_q * pt.y) / det;
  Rat uy = (lin_q * pt.x + lin_p * pt.y) / det;
  return Point2{ux + origin.x, uy + origin.y};
}

std::pair<std::complex<double>, std::complex<double>> PlaneTransform::forward_c(
    std::complex<double> x1, std::complex<double> x2) const {
  std::complex<double> ux = x1 - origin.x.get_d(), uy = x2 - origin.y.get_d();
  double p = lin_p.get_d(), q = lin_q.get_d();
  return {p * ux + q * uy, -q * ux + p * uy};
}

std::pair<std::complex<double>, std::complex<double>> PlaneTransform::inverse_c(
    std::complex<double> x1, std::complex<double> x2) const {
  double det = squared_scale().get_d();
  double p = lin_p.get_d(), q = lin_q.get_d();
  std::complex<double> ux = (p * x1 - q * x2) / det;
  std::complex<double> uy = (q * x1 + p * x2) / det;
  return {ux + origin.x.get_d(), uy + origin.y.get_d()};
}

double PlaneTransform::dilation() const {
  return std::sqrt(squared_scale().get_d());
}

std::array<std::array<double, 2>, 2> PlaneTransform::rotation() const {
  double s = dilation();
  double p = lin_p.get_d() / s, q = lin_q.get_d() / s;
  return {{{p, q}, {-q, p}}};
}

bool collinear(const Point2& p, const Point2& q, const Point2& r) {
  Rat cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return cross == 0;
}

namespace {

// Exact square root refinement: two Heron steps from a double seed give a
// rational whose square matches `target` far beyond double precision.
Rat refined_sqrt(const Rat& target) {
  if (target == 0) return Rat(0);
  double seed = std::sqrt(target.get_d());
  Rat s(seed);
  if (s <= 0) s = Rat(1);
  for (int i = 0; i < 2; ++i) s = (s + target / s) / 2;
  return s;
}

}  // namespace

std::optional<Point2> triple_circles_concurrent(
    const Configuration& config, const std::array<Label, 3>& triple) {
  std::array<Point2, 3> t;
  std::array<Rat, 3> k;
  for (int i = 0; i < 3; ++i) {
    t[std::size_t(i)] = config.anchor(triple[std::size_t(i)]);
    k[std::size_t(i)] = config.constant(triple[std::size_t(i)]);
    if (k[std::size_t(i)] <= 0) return std::nullopt;
  }
  std::array<Rat, 3> r2{Rat(1) / k[0], Rat(1) / k[1], Rat(1) / k[2]};

  // Radical line of circles (0, i): 2 (t_i - t_0) . P = rhs_i.
  auto line = [&](int i) {
    Rat ax = 2 * (t[std::size_t(i)].x - t[0].x);
    Rat ay = 2 * (t[std::size_t(i)].y - t[0].y);
    Rat rhs = (t[std::size_t(i)].x * t[std::size_t(i)].x +
               t[std::size_t(i)].y * t[std::size_t(i)].y - r2[std::size_t(i)]) -
              (t[0].x * t[0].x + t[0].y * t[0].y - r2[0]);
    return std::array<Rat, 3>{ax, ay, rhs};
  };
  auto l1 = line(1), l2 = line(2);

  Rat det = l1[0] * l2[1] - l1[1] * l2[0];
  if (det != 0) {
    // Radical center; the triple is concurrent iff it lies on one circle.
    Point2 p{(l1[2] * l2[1] - l1[1] * l2[2]) / det,
             (l1[0] * l2[2] - l1[2] * l2[0]) / det};
    if (dist2(p, t[0]) == r2[0]) return p;
    return std::nullopt;
  }

  // Collinear centers: the radical lines are parallel; a common point needs
  // them to coincide and the shared line to meet the first circle.
  Rat c12 = l1[0] * l2[2] - l1[2] * l2[0];
  Rat c13 = l1[1] * l2[2] - l1[2] * l2[1];
  if (c12 != 0 || c13 != 0) return std::nullopt;

  // Foot of the perpendicular from t0 onto the shared radical line.
  Rat w2 = l1[0] * l1[0] + l1[1] * l1[1];  // positive (distinct anchors)
  Rat along = (l1[2] - (l1[0] * t[0].x + l1[1] * t[0].y)) / w2;
  Point2 foot{t[0].x + along * l1[0], t[0].y + along * l1[1]};
  Rat h2 = dist2(foot, t[0]);
  if (h2 > r2[0]) return std::nullopt;
  if (h2 == r2[0]) return foot;

  // Two real meeting points; pick one. The offset is an exact-refined
  // square root, so the witness residual is far below the published bound.
  Rat off = refined_sqrt((r2[0] - h2) / w2);
  return Point2{foot.x - off * l1[1], foot.y + off * l1[0]};
}

ValidationReport validate(const Configuration& config) {
  config.check_basic();
  ValidationReport rep;
  std::ostringstream details;
  const std::array<std::array<Label, 3>, 4> triples{{
      {Label::A, Label::B, Label::C},
      {Label::A, Label::B, Label::D},
      {Label::A, Label::C, Label::D},
      {Label::B, Label::C, Label::D},
  }};
  for (const auto& tr : triples) {
    bool bad = false;
    if (collinear(config.anchor(tr[0]), config.anchor(tr[1]),
                  config.anchor(tr[2]))) {
      rep.condition_i_ok = false;
      bad = true;
      details << "anchors " << label_name(tr[0]) << label_name(tr[1])
              << label_name(tr[2]) << " are collinear\n";
    }
    if (auto w = triple_circles_concurrent(config, tr)) {
      rep.condition_ii_ok = false;
      bad = true;
      details << "circles " << label_name(tr[0]) << label_name(tr[1])
              << label_name(tr[2]) << " share a common point near ("
              << w->x.get_d() << ", " << w->y.get_d() << ")\n";
    }
    if (bad) rep.violating_triples.push_back(tr);
  }
  rep.details = details.str();
  return rep;
}

Configuration transformed(const Configuration& config,
                          const PlaneTransform& t) {
  Configuration out;
  Rat lambda = t.squared_scale();
  for (std::size_t i = 0; i < 4; ++i) {
    out.anchors[i] = t.forward(config.anchors[i]);
    out.constants[i] = config.constants[i] / lambda;
  }
  return out;
}

std::pair<Configuration, PlaneTransform> normalize(
    const Configuration& config) {
  const Point2& a = config.anchor(Label::A);
  const Point2& b = config.anchor(Label::B);
  Rat vx = b.x - a.x, vy = b.y - a.y;
  Rat n2 = vx * vx + vy * vy;
  if (n2 == 0) throw normalize_error("anchors A and B coincide");
  PlaneTransform t{a, vx / n2, vy / n2};
  return {transformed(config, t), t};
}

}  // namespace quadanchor
