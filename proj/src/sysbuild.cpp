#include "quadanchor/sysbuild.hpp"

#include <cmath>
#include <map>
#include <string>

#include "quadanchor/elim.hpp"
#include "quadanchor/errors.hpp"

namespace quadanchor {

namespace {

using Cx = std::complex<double>;

RatMPoly squared_offset(const std::string& u, const std::string& v,
                        const Point2& t) {
  RatMPoly du = RatMPoly::var(u) - RatMPoly(t.x);
  RatMPoly dv = RatMPoly::var(v) - RatMPoly(t.y);
  return du * du + dv * dv;
}

Rat norm2(const Point2& t) { return t.x * t.x + t.y * t.y; }

double dbl(const Rat& r) { return r.get_d(); }

// Signed cofactors of the top row of
//   | *    *    *    *  |
//   | a1   b1   c1   d1 |
//   | a2   b2   c2   d2 |
//   | 1    1    1    1  |
// so that det = sum_T w_T * (top entry for T).
std::array<Rat, 4> top_row_cofactors(const Configuration& config) {
  std::array<Rat, 4> w;
  for (int j = 0; j < 4; ++j) {
    std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3));
    int col = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == j) continue;
      m[0][col] = config.anchors[i].x;
      m[1][col] = config.anchors[i].y;
      m[2][col] = Rat(1);
      ++col;
    }
    Rat minor = rational_det(m);
    w[j] = (j % 2 == 0) ? minor : -minor;
  }
  return w;
}

Rat triangle_delta(const Configuration& config) {
  const Point2& a = config.anchor(Label::A);
  const Point2& b = config.anchor(Label::B);
  const Point2& c = config.anchor(Label::C);
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace

std::complex<double> GammaFn::eval(Cx y1, Cx y2) const {
  std::map<std::string, Cx> at{{"y1", y1}, {"y2", y2}};
  Cx den = denominator.eval(at);
  double kn = std::abs(dbl(k)) *
              (std::norm(y1 - Cx(dbl(anchor.x))) +
               std::norm(y2 - Cx(dbl(anchor.y))));
  if (std::abs(den) <= 1e-12 * (1.0 + kn))
    throw pole_error("distance quotient evaluated at a denominator zero");
  return numerator.eval(at) / den;
}

std::array<RatMPoly, 4> build_quartic_system(const Configuration& config) {
  config.check_basic();
  std::array<RatMPoly, 4> out;
  for (int i = 0; i < 4; ++i) {
    const Point2& t = config.anchors[i];
    RatMPoly nx = squared_offset("x1", "x2", t);
    RatMPoly ny = squared_offset("y1", "y2", t);
    out[i] = config.constants[i] * (nx * ny) - nx - ny;
  }
  return out;
}

GammaFn gamma(const Configuration& config, Label label) {
  const Point2& t = config.anchor(label);
  const Rat& k = config.constant(label);
  RatMPoly n = squared_offset("y1", "y2", t);
  GammaFn g;
  g.label = label;
  g.anchor = t;
  g.k = k;
  g.denominator = k * n - RatMPoly(1);
  g.numerator = n - norm2(t) * g.denominator;
  return g;
}

CPoint2 recover_X(const Configuration& config, const CPoint2& Y) {
  Rat delta = triangle_delta(config);
  if (delta == 0)
    throw collinear_error("anchors A, B, C are collinear, no Cramer frame");

  // gbar[i] = |X - T_i|^2 expressed through Y alone.
  Cx gbar[3];
  for (int i = 0; i < 3; ++i) {
    const Point2& t = config.anchors[i];
    const Rat& k = config.constants[i];
    Cx dy1 = Y[0] - Cx(dbl(t.x));
    Cx dy2 = Y[1] - Cx(dbl(t.y));
    Cx n = dy1 * dy1 + dy2 * dy2;
    Cx den = dbl(k) * n - 1.0;
    if (std::abs(den) <= 1e-12 * (1.0 + std::abs(dbl(k) * n)))
      throw pole_error("Y lies on a cleared-denominator zero");
    gbar[i] = n / den;
  }

  // 2 (B-A) . X = gbar_A - gbar_B - |A|^2 + |B|^2, same with C. The |T|^2
  // shifts convert the squared distances into the linear form 2 T.X - |X|^2.
  const Point2& a = config.anchor(Label::A);
  const Point2& b = config.anchor(Label::B);
  const Point2& c = config.anchor(Label::C);
  Cx rhs1 = gbar[0] - gbar[1] - Cx(dbl(norm2(a) - norm2(b)));
  Cx rhs2 = gbar[0] - gbar[2] - Cx(dbl(norm2(a) - norm2(c)));
  double m11 = dbl(b.x - a.x), m12 = dbl(b.y - a.y);
  double m21 = dbl(c.x - a.x), m22 = dbl(c.y - a.y);
  double inv = 1.0 / (2.0 * dbl(delta));
  return {(rhs1 * m22 - rhs2 * m12) * inv, (m11 * rhs2 - m21 * rhs1) * inv};
}

ReducedSystem build_reduced_system(const Configuration& config) {
  config.check_basic();
  Rat delta = triangle_delta(config);
  if (delta == 0)
    throw collinear_error("anchors A, B, C are collinear, no Cramer frame");

  RatMPoly n[4], d[4], e[4];
  for (int i = 0; i < 4; ++i) {
    n[i] = squared_offset("y1", "y2", config.anchors[i]);
    d[i] = config.constants[i] * n[i] - RatMPoly(1);
    e[i] = n[i] - norm2(config.anchors[i]) * d[i];
  }

  ReducedSystem rs;
  rs.delta = delta;
  rs.cleared_factors = {d[0], d[1], d[2], d[3]};

  // Linear dependence of the four squared distances on (x1, x2, 1): the
  // 4x4 determinant with top row e_T/d_T, cleared by d_A d_B d_C d_D.
  std::array<Rat, 4> w = top_row_cofactors(config);
  RatMPoly det;
  for (int i = 0; i < 4; ++i) {
    RatMPoly prod = w[i] * e[i];
    for (int j = 0; j < 4; ++j)
      if (j != i) prod *= d[j];
    det += prod;
  }
  rs.det_constraint = det;

  // Cramer's X plugged back into |X - A|^2 = gbar_A, cleared by
  // (d_A d_B d_C)^2. wb and wc carry the cleared pairwise differences
  // gbar_A - gbar_B and gbar_A - gbar_C up to sign.
  const Point2& a = config.anchor(Label::A);
  const Point2& b = config.anchor(Label::B);
  const Point2& c = config.anchor(Label::C);
  RatMPoly wb = (e[1] * d[0] - e[0] * d[1]) * d[2];
  RatMPoly wc = (e[2] * d[0] - e[0] * d[2]) * d[1];
  RatMPoly q1 = (a.y - c.y) * wb - (a.y - b.y) * wc;
  RatMPoly q2 = (c.x - a.x) * wb - (b.x - a.x) * wc;
  RatMPoly dd = d[0] * d[1] * d[2];
  RatMPoly t1 = q1 - (2 * delta * a.x) * dd;
  RatMPoly t2 = q2 - (2 * delta * a.y) * dd;
  rs.circle_constraint =
      t1 * t1 + t2 * t2 - (4 * delta * delta) * n[0] * d[0] * (d[1] * d[1]) * (d[2] * d[2]);
  return rs;
}

GammaSystem build_gamma_system(const Configuration& config) {
  config.check_basic();
  const Point2& a = config.anchor(Label::A);
  const Point2& b = config.anchor(Label::B);
  const Point2& c = config.anchor(Label::C);
  const Point2& dpt = config.anchor(Label::D);
  if (!(a.x == 0 && a.y == 0 && b.y == 0 && b.x != 0))
    throw normalize_error("expected the reference frame A=(0,0), B=(b1,0)");
  if (c.y == 0 || dpt.y == 0)
    throw normalize_error("remaining anchors must lie off the x-axis");

  Rat b1 = b.x, c1 = c.x, c2 = c.y, d1 = dpt.x, d2 = dpt.y;
  Rat nc = norm2(c), nd = norm2(dpt);
  RatMPoly gA = RatMPoly::var("gA"), gB = RatMPoly::var("gB");
  RatMPoly gC = RatMPoly::var("gC"), gD = RatMPoly::var("gD");
  RatMPoly one(1);
  RatMPoly al = config.constant(Label::A) * gA - one;
  RatMPoly be = config.constant(Label::B) * gB - one;
  RatMPoly ga = config.constant(Label::C) * gC - one;
  RatMPoly de = config.constant(Label::D) * gD - one;

  // From |Y-A|^2 = gA/al and the pairwise differences with B, C, D:
  //   2 b1 al be y1            = n1
  //   2 al ga (c1 y1 + c2 y2)  = rc        (same with D and rd)
  //   2 b1 c2 al be ga y2      = n2
  RatMPoly n1 = (b1 * b1) * (al * be) + be * gA - al * gB;
  RatMPoly rc = gA * ga - gC * al + nc * (al * ga);
  RatMPoly rd = gA * de - gD * al + nd * (al * de);
  RatMPoly n2 = b1 * (be * rc) - c1 * (ga * n1);

  GammaSystem gs;

  // |Y-A|^2 = gA/al with y1, y2 substituted, cleared by the square of the
  // common denominator 2 b1 c2 al be ga and stripped of one al factor.
  gs.H = (c2 * c2) * (ga * ga) * (n1 * n1) + n2 * n2 -
         (4 * b1 * b1 * c2 * c2) * (al * (be * be) * (ga * ga) * gA);

  // y2 eliminated between the C-row and D-row relations above, stripped of
  // the shared 2 b1 al be factor. Multilinear, degree at most 4; the
  // quadrilinear coefficient can vanish for special anchor data.
  gs.F = d2 * (de * (b1 * (be * rc) - c1 * (ga * n1))) -
         c2 * (ga * (b1 * (be * rd) - d1 * (de * n1)));

  // Top-row expansion of the 4x4 dependence determinant in the g_T.
  std::array<Rat, 4> w = top_row_cofactors(config);
  std::array<RatMPoly, 4> tops{gA, gB - RatMPoly(b1 * b1),
                               gC - RatMPoly(nc), gD - RatMPoly(nd)};
  RatMPoly lin;
  for (int i = 0; i < 4; ++i) lin += w[i] * tops[i];
  gs.linear_relation = lin;

  // |X|^2 = gA with X written out of the two Cramer rows.
  RatMPoly p1 = c2 * (gA - gB + RatMPoly(b1 * b1));
  RatMPoly p2 = b1 * (gA - gC + RatMPoly(nc)) -
                c1 * (gA - gB + RatMPoly(b1 * b1));
  gs.quadric_relation = p1 * p1 + p2 * p2 - (4 * b1 * b1 * c2 * c2) * gA;
  return gs;
}

}  // namespace quadanchor
