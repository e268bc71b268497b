#include "quadanchor/examples.hpp"

#include <cmath>
#include <complex>

#include "quadanchor/cpoly.hpp"

namespace quadanchor {

namespace {

Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Configuration example_square() {
  Configuration c;
  c.anchors[0] = {Rat(-1), Rat(-1)};
  c.anchors[1] = {Rat(-1), Rat(1)};
  c.anchors[2] = {Rat(1), Rat(-1)};
  c.anchors[3] = {Rat(1), Rat(1)};
  for (auto& k : c.constants) k = frac(11, 10);
  return c;
}

Configuration example_collinear() {
  Configuration c;
  c.anchors[0] = {Rat(-1), Rat(0)};
  c.anchors[1] = {Rat(1), Rat(0)};
  c.anchors[2] = {Rat(-2), Rat(0)};
  c.anchors[3] = {Rat(2), Rat(0)};
  c.constants[0] = frac(-2, 3);
  c.constants[1] = frac(-2, 3);
  c.constants[2] = frac(2, 3);
  c.constants[3] = frac(2, 3);
  return c;
}

std::vector<ExamplePair> example_square_pairs() {
  // Radicals evaluated in extended precision before the final rounding.
  const long double s14 = sqrtl(14.0L);
  const long double s2041 = sqrtl(2041.0L);
  const double a = double(sqrtl((2.0L / 11.0L) * (5.0L - s14)));
  const double b = double(sqrtl((2.0L / 11.0L) * (5.0L + s14)));
  const double c = double(sqrtl((85.0L - s2041) / 66.0L));
  const double d = double(sqrtl((85.0L + s2041) / 66.0L));
  const double u = double(sqrtl(157.0L / 2.0L) / 11.0L);
  const double v = double(sqrtl(107.0L / 2.0L) / 11.0L);

  std::vector<ExamplePair> out;
  // Eight (x, y) values placed on each coordinate axis in turn.
  const double line_pairs[8][2] = {{-a, a}, {a, -a}, {-b, b}, {b, -b},
                                   {c, -d}, {-c, d}, {-d, c}, {d, -c}};
  for (const auto& p : line_pairs) {
    ExamplePair e1;
    e1.X = {Cx(p[0], 0.0), Cx(0.0, 0.0)};
    e1.Y = {Cx(p[1], 0.0), Cx(0.0, 0.0)};
    out.push_back(e1);
    ExamplePair e2;
    e2.X = {Cx(0.0, 0.0), Cx(p[0], 0.0)};
    e2.Y = {Cx(0.0, 0.0), Cx(p[1], 0.0)};
    out.push_back(e2);
  }
  // Eight purely imaginary pairs built from u and v.
  for (int s = -1; s <= 1; s += 2) {
    for (int t = -1; t <= 1; t += 2) {
      ExamplePair e1;
      e1.X = {Cx(0.0, s * u), Cx(0.0, t * v)};
      e1.Y = {Cx(0.0, -s * u), Cx(0.0, t * v)};
      out.push_back(e1);
      ExamplePair e2;
      e2.X = {Cx(0.0, t * v), Cx(0.0, s * u)};
      e2.Y = {Cx(0.0, t * v), Cx(0.0, -s * u)};
      out.push_back(e2);
    }
  }
  return out;
}

std::vector<ExamplePair> example_collinear_lifts(int n) {
  std::vector<ExamplePair> out;
  out.reserve(n > 0 ? size_t(n) : 0);
  for (int j = 0; j < n; ++j) {
    // 2 x^2 y^2 + 5 (x^2 + y^2) + 8 = 0 has no real points; for real x the
    // y branch is purely imaginary: y^2 = -(5 x^2 + 8) / (2 x^2 + 5) < 0.
    const double x = -3.0 + 6.0 * (j + 0.5) / n;
    const double y2 = -(5.0 * x * x + 8.0) / (2.0 * x * x + 5.0);
    const Cx y(0.0, std::sqrt(-y2));
    ExamplePair e;
    e.X = {Cx(0.0, 0.0), Cx(x, 0.0)};
    e.Y = {Cx(0.0, 0.0), y};
    out.push_back(e);
  }
  return out;
}

}  // namespace quadanchor
