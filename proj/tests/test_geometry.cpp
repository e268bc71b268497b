#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "quadanchor/errors.hpp"
#include "quadanchor/geometry.hpp"

using namespace quadanchor;

namespace {

Rat Q(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Point2 P(long x, long y) { return Point2{Q(x), Q(y)}; }

Configuration square_config() {
  Configuration c;
  c.anchor(Label::A) = P(-1, -1);
  c.anchor(Label::B) = P(-1, 1);
  c.anchor(Label::C) = P(1, -1);
  c.anchor(Label::D) = P(1, 1);
  for (auto l : kLabels) c.constant(l) = Q(11, 10);
  return c;
}

Configuration axis_config() {
  Configuration c;
  c.anchor(Label::A) = P(-1, 0);
  c.anchor(Label::B) = P(1, 0);
  c.anchor(Label::C) = P(-2, 0);
  c.anchor(Label::D) = P(2, 0);
  c.constant(Label::A) = Q(-2, 3);
  c.constant(Label::B) = Q(-2, 3);
  c.constant(Label::C) = Q(2, 3);
  c.constant(Label::D) = Q(2, 3);
  return c;
}

double witness_residual(const Configuration& c,
                        const std::array<Label, 3>& tr, const Point2& w) {
  double worst = 0.0;
  for (auto l : tr) {
    Rat res = dist2(w, c.anchor(l)) - Rat(1) / c.constant(l);
    worst = std::max(worst, std::abs(res.get_d()));
  }
  return worst;
}

}  // namespace

TEST_CASE("collinearity basics and permutation invariance") {
  CHECK(collinear(P(0, 0), P(1, 0), P(2, 0)));
  CHECK(collinear(P(-1, 0), P(1, 0), P(2, 0)));
  CHECK(!collinear(P(-1, -1), P(-1, 1), P(1, -1)));

  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coord(-6, 6);
  for (int trial = 0; trial < 50; ++trial) {
    Point2 a = P(coord(rng), coord(rng));
    Point2 b = P(coord(rng), coord(rng));
    Point2 c = P(coord(rng), coord(rng));
    bool base = collinear(a, b, c);
    CHECK(collinear(b, a, c) == base);
    CHECK(collinear(c, b, a) == base);
    CHECK(collinear(b, c, a) == base);
  }
}

TEST_CASE("concurrency on the pinned witness case") {
  Configuration c;
  c.anchor(Label::A) = P(0, 0);
  c.anchor(Label::B) = P(2, 0);
  c.anchor(Label::C) = P(0, 2);
  c.anchor(Label::D) = P(7, 9);
  for (auto l : kLabels) c.constant(l) = Q(1, 2);
  auto w = triple_circles_concurrent(c, {Label::A, Label::B, Label::C});
  REQUIRE(w.has_value());
  CHECK(w->x == 1);
  CHECK(w->y == 1);
  CHECK(witness_residual(c, {Label::A, Label::B, Label::C}, *w) <=
        kGeoWitnessTol);

  // Permutation invariance of the decision.
  CHECK(triple_circles_concurrent(c, {Label::C, Label::A, Label::B})
            .has_value());
  CHECK(triple_circles_concurrent(c, {Label::B, Label::C, Label::A})
            .has_value());
}

TEST_CASE("negative constants make a triple trivially non-concurrent") {
  Configuration c = axis_config();
  CHECK(!triple_circles_concurrent(c, {Label::A, Label::B, Label::C})
             .has_value());
  CHECK(!triple_circles_concurrent(c, {Label::A, Label::B, Label::D})
             .has_value());
}

TEST_CASE("square circles are nowhere concurrent, with brute-force backup") {
  Configuration c = square_config();
  const std::array<std::array<Label, 3>, 4> triples{{
      {Label::A, Label::B, Label::C},
      {Label::A, Label::B, Label::D},
      {Label::A, Label::C, Label::D},
      {Label::B, Label::C, Label::D},
  }};
  for (const auto& tr : triples) {
    CHECK(!triple_circles_concurrent(c, tr).has_value());

    // Numeric oracle: intersect the first two circles directly, then test
    // membership in the third.
    double r2 = 10.0 / 11.0;
    double ax = c.anchor(tr[0]).x.get_d(), ay = c.anchor(tr[0]).y.get_d();
    double bx = c.anchor(tr[1]).x.get_d(), by = c.anchor(tr[1]).y.get_d();
    double cx = c.anchor(tr[2]).x.get_d(), cy = c.anchor(tr[2]).y.get_d();
    double dx = bx - ax, dy = by - ay;
    double d2 = dx * dx + dy * dy, d = std::sqrt(d2);
    bool any_on_third = false;
    if (d <= 2.0 * std::sqrt(r2)) {
      double along = d / 2.0;  // equal radii
      double h = std::sqrt(std::max(0.0, r2 - along * along));
      double mx = ax + dx / 2.0, my = ay + dy / 2.0;
      for (double sgn : {1.0, -1.0}) {
        double px = mx + sgn * h * (-dy) / d, py = my + sgn * h * dx / d;
        double res = (px - cx) * (px - cx) + (py - cy) * (py - cy) - r2;
        if (std::abs(res) < 1e-9) any_on_third = true;
      }
    }
    CHECK(!any_on_third);
  }
}

TEST_CASE("collinear centers with a genuine common point") {
  // P = (1, sqrt(2)) lies on all three circles by construction.
  Configuration c;
  c.anchor(Label::A) = P(0, 0);
  c.anchor(Label::B) = P(2, 0);
  c.anchor(Label::C) = P(4, 0);
  c.anchor(Label::D) = P(9, 9);
  c.constant(Label::A) = Q(1, 3);
  c.constant(Label::B) = Q(1, 3);
  c.constant(Label::C) = Q(1, 11);
  c.constant(Label::D) = Q(1);
  auto w = triple_circles_concurrent(c, {Label::A, Label::B, Label::C});
  REQUIRE(w.has_value());
  CHECK(std::abs(w->x.get_d() - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(w->y.get_d()) - std::sqrt(2.0)) < 1e-12);
  CHECK(witness_residual(c, {Label::A, Label::B, Label::C}, *w) <=
        kGeoWitnessTol);

  // Shifting one radius breaks coincidence of the radical lines.
  c.constant(Label::C) = Q(1, 12);
  CHECK(!triple_circles_concurrent(c, {Label::A, Label::B, Label::C})
             .has_value());
}

TEST_CASE("validate on the two reference configurations") {
  auto rep1 = validate(square_config());
  CHECK(rep1.condition_i_ok);
  CHECK(rep1.condition_ii_ok);
  CHECK(rep1.ok());
  CHECK(rep1.violating_triples.empty());

  auto rep2 = validate(axis_config());
  CHECK(!rep2.condition_i_ok);
  CHECK(rep2.condition_ii_ok);
  CHECK(rep2.violating_triples.size() == 4);
  CHECK(!rep2.details.empty());

  Configuration dup = square_config();
  dup.anchor(Label::B) = dup.anchor(Label::A);
  CHECK_THROWS_AS(validate(dup), input_error);

  Configuration zk = square_config();
  zk.constant(Label::C) = Q(0);
  CHECK_THROWS_AS(validate(zk), input_error);
}

TEST_CASE("normalization places A and B and rescales constants") {
  Configuration already;
  already.anchor(Label::A) = P(0, 0);
  already.anchor(Label::B) = P(1, 0);
  already.anchor(Label::C) = P(2, 5);
  already.anchor(Label::D) = P(-3, 4);
  for (auto l : kLabels) already.constant(l) = Q(3, 7);
  auto [n1, t1] = normalize(already);
  CHECK(t1.is_identity());
  CHECK(n1.anchors == already.anchors);
  CHECK(n1.constants == already.constants);

  Configuration dil;
  dil.anchor(Label::A) = P(0, 0);
  dil.anchor(Label::B) = P(2, 0);
  dil.anchor(Label::C) = P(1, 3);
  dil.anchor(Label::D) = P(-1, 2);
  for (auto l : kLabels) dil.constant(l) = Q(1);
  auto [n2, t2] = normalize(dil);
  CHECK(n2.anchor(Label::B) == P(1, 0));
  for (auto l : kLabels) CHECK(n2.constant(l) == Q(4));

  Configuration sq = square_config();
  auto [n3, t3] = normalize(sq);
  CHECK(n3.anchor(Label::A) == P(0, 0));
  CHECK(n3.anchor(Label::B) == P(1, 0));
  CHECK(n3.anchor(Label::C) == P(0, -1));
  CHECK(n3.anchor(Label::D) == P(1, -1));
  for (auto l : kLabels) CHECK(n3.constant(l) == Q(22, 5));
}

TEST_CASE("transform round trip and validation invariance") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> coord(-5, 5);
  std::uniform_int_distribution<long> kk(1, 9);
  int done = 0;
  while (done < 25) {
    Configuration c;
    for (auto l : kLabels) {
      c.anchor(l) = Point2{Q(coord(rng), 2), Q(coord(rng), 2)};
      c.constant(l) = Q(2 * kk(rng) - 9, 5);
    }
    try {
      c.check_basic();
    } catch (const input_error&) {
      continue;
    }
    if (c.anchor(Label::A) == c.anchor(Label::B)) continue;
    ++done;

    auto [norm, t] = normalize(c);
    CHECK(norm.anchor(Label::A) == P(0, 0));
    CHECK(norm.anchor(Label::B) == P(1, 0));

    // Round trip through the inverse map restores every anchor exactly.
    for (auto l : kLabels)
      CHECK(t.inverse(norm.anchor(l)) == c.anchor(l));

    // Forward/inverse compose to the identity on arbitrary points.
    Point2 probe{Q(coord(rng), 3), Q(coord(rng), 3)};
    CHECK(t.inverse(t.forward(probe)) == probe);

    auto r0 = validate(c);
    auto r1 = validate(norm);
    CHECK(r0.condition_i_ok == r1.condition_i_ok);
    CHECK(r0.condition_ii_ok == r1.condition_ii_ok);
    CHECK(r0.violating_triples.size() == r1.violating_triples.size());
  }
}
