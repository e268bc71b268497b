#include "quadanchor/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quadanchor/cpoly.hpp"
#include "quadanchor/elim.hpp"
#include "quadanchor/errors.hpp"

namespace quadanchor {
namespace {

template <class R>
R rat_to(const Rat& r) {
  return static_cast<R>(r.get_num().get_d()) /
         static_cast<R>(r.get_den().get_d());
}

template <class R>
R residual_t(const Configuration& config,
             const std::array<std::complex<R>, 2>& X,
             const std::array<std::complex<R>, 2>& Y) {
  using C = std::complex<R>;
  R worst = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const C t1(rat_to<R>(config.anchors[i].x), R(0));
    const C t2(rat_to<R>(config.anchors[i].y), R(0));
    const R k = rat_to<R>(config.constants[i]);
    const C dx1 = X[0] - t1, dx2 = X[1] - t2;
    const C dy1 = Y[0] - t1, dy2 = Y[1] - t2;
    const C nx = dx1 * dx1 + dx2 * dx2;
    const C ny = dy1 * dy1 + dy2 * dy2;
    worst = std::max(worst, std::abs(k * nx * ny - nx - ny));
  }
  return worst;
}

double coord_mag(const SolutionPair& p) {
  double m = 0;
  for (const Cx& z : {p.X[0], p.X[1], p.Y[0], p.Y[1]})
    m = std::max(m, std::abs(z));
  return m;
}

bool real_pair(const SolutionPair& p, double tol_real) {
  double im = 0;
  for (const Cx& z : {p.X[0], p.X[1], p.Y[0], p.Y[1]})
    im = std::max(im, std::abs(z.imag()));
  return im <= tol_real * (1.0 + coord_mag(p));
}

bool coord_close(Cx a, Cx b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a));
}

bool same_pair(const SolutionPair& a, const SolutionPair& b, double tol) {
  return coord_close(a.X[0], b.X[0], tol) && coord_close(a.X[1], b.X[1], tol) &&
         coord_close(a.Y[0], b.Y[0], tol) && coord_close(a.Y[1], b.Y[1], tol);
}

std::array<double, 8> sort_key(const SolutionPair& p) {
  auto r9 = [](double v) {
    double g = std::round(v * 1e9) / 1e9;
    return g == 0.0 ? 0.0 : g;  // fold -0
  };
  return {r9(p.X[0].real()), r9(p.X[0].imag()), r9(p.X[1].real()),
          r9(p.X[1].imag()), r9(p.Y[0].real()), r9(p.Y[0].imag()),
          r9(p.Y[1].real()), r9(p.Y[1].imag())};
}

// Partial evaluation of one bivariate constraint along the sweep line
// fixed = value. Free means the whole section vanishes (no constraint);
// Conflict means a nonzero constant survives (no roots on this line).
enum class SectionKind { Conflict, Free, Roots };

struct Section {
  SectionKind kind = SectionKind::Conflict;
  std::vector<ComplexRoot> roots;
};

Section section(const RatMPoly& p, const std::string& kept,
                const std::string& fixed, Cx value) {
  // Coefficients must be evaluated at working precision: plain double
  // Horner can cancel to a polynomial that is self-consistent but wrong,
  // and no check on the double image alone would notice.
  SectionImage si = specialize_extended(p, kept, fixed, value);
  if (si.max_rel <= 1e-9) return {SectionKind::Free, {}};
  CPoly t{si.coeffs};
  if (t.degree() < 1) return {SectionKind::Conflict, {}};
  // A kept-but-tiny leading coefficient would trip the double iteration's
  // guard; such sections go straight to the extended pass.
  if (std::abs(t.coeffs().back()) > 1e-13) {
    try {
      RootFindResult rr = univariate_roots(t);
      if (rr.reconstruction_error <= 1e-9)
        return {SectionKind::Roots, std::move(rr.roots)};
    } catch (const std::exception&) {
    }
  }
  // Even with accurate coefficients the double iteration can fail to
  // converge on a clustered section; redo the root finding in extended
  // precision from the exact bivariate.
  try {
    return {SectionKind::Roots, section_roots_exact(p, kept, fixed, value).roots};
  } catch (const std::exception&) {
    return {SectionKind::Conflict, {}};
  }
}

// Candidate values that vanish on both sections; generous match radius,
// the Newton polish downstream is the actual gate.
std::vector<ComplexRoot> intersect_roots(const std::vector<ComplexRoot>& a,
                                         const std::vector<ComplexRoot>& b) {
  std::vector<ComplexRoot> out;
  for (const ComplexRoot& ra : a) {
    for (const ComplexRoot& rb : b) {
      if (std::abs(ra.value - rb.value) <= 1e-3 * (1.0 + std::abs(ra.value))) {
        out.push_back({ra.value, std::max(ra.multiplicity, rb.multiplicity)});
        break;
      }
    }
  }
  return out;
}

std::vector<ComplexRoot> joint_section_roots(const RatMPoly& p,
                                             const RatMPoly& q,
                                             const std::string& kept,
                                             const std::string& fixed,
                                             Cx value) {
  Section sp = section(p, kept, fixed, value);
  Section sq = section(q, kept, fixed, value);
  if (sp.kind == SectionKind::Conflict || sq.kind == SectionKind::Conflict)
    return {};
  if (sp.kind == SectionKind::Roots && sq.kind == SectionKind::Roots)
    return intersect_roots(sp.roots, sq.roots);
  if (sp.kind == SectionKind::Roots) return sp.roots;
  if (sq.kind == SectionKind::Roots) return sq.roots;
  return {};
}

// Exact square-free reduction, then numeric roots. Projection collisions
// inflate cluster multiplicities, so the returned counts are only used as
// hints for pairs the Jacobian already flags.
RootFindResult roots_of_eliminant(RatMPoly R, const std::string& var,
                                  std::vector<std::string>& diags) {
  R = R.primitive();
  RatMPoly dR = R.derivative(var);
  if (dR.is_zero()) throw degree_error("eliminant is constant in " + var);
  RatMPoly g = mp_gcd(R, dR);
  if (g.total_degree() >= 1) {
    if (auto q = R.divided_exact(g)) R = q->primitive();
  }
  RootFindResult rr = univariate_roots_exact(R, var);
  std::ostringstream os;
  os << "eliminant in " << var << ": square-free degree " << rr.degree_used
     << ", reconstruction error " << rr.reconstruction_error;
  if (rr.precision_bits > 53)
    os << " (" << rr.precision_bits << "-bit pass)";
  diags.push_back(os.str());
  return rr;
}

// The anchor orderings whose first three entries can serve as the linear
// recovery frame; identity preferred.
constexpr std::array<std::array<int, 4>, 4> kOrders{
    {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}}};

int recovery_order(const Configuration& config) {
  for (int oi = 0; oi < 4; ++oi) {
    const auto& o = kOrders[oi];
    if (!collinear(config.anchors[o[0]], config.anchors[o[1]],
                   config.anchors[o[2]]))
      return oi;
  }
  return -1;
}

Configuration permuted(const Configuration& config, int oi) {
  Configuration pc;
  for (int i = 0; i < 4; ++i) {
    pc.anchors[i] = config.anchors[kOrders[oi][i]];
    pc.constants[i] = config.constants[kOrders[oi][i]];
  }
  return pc;
}

struct SolutionSet {
  std::vector<SolutionPair> items;
  // Insert with duplicate merging; returns true when the set grew.
  bool add(SolutionPair p, double dedupe_tol) {
    for (SolutionPair& q : items) {
      if (same_pair(q, p, dedupe_tol)) {
        q.multiplicity = std::max(q.multiplicity, p.multiplicity);
        if (p.residual < q.residual) {
          int mult = q.multiplicity;
          q = p;
          q.multiplicity = mult;
        }
        return false;
      }
    }
    items.push_back(p);
    return true;
  }
};

void close_and_emit(const Configuration& config,
                    std::vector<SolutionPair> found,
                    const ToleranceSettings& tol, SolveReport& rep) {
  SolutionSet set;
  for (SolutionPair& p : found) {
    if (p.residual > tol.tol_accept) continue;
    p.is_real = real_pair(p, tol.tol_real);
    set.add(p, tol.dedupe);
  }
  // Swap and conjugation send solutions to solutions; close the list so a
  // candidate missed by the sweep still appears through its partner.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SolutionPair> snapshot = set.items;
    for (const SolutionPair& p : snapshot) {
      SolutionPair sw = p;
      std::swap(sw.X, sw.Y);
      SolutionPair cj = p;
      for (Cx* z : {&cj.X[0], &cj.X[1], &cj.Y[0], &cj.Y[1]})
        *z = std::conj(*z);
      for (SolutionPair im : {sw, cj}) {
        im.residual = residual_t<double>(config, im.X, im.Y);
        if (im.residual > tol.tol_accept) continue;
        im.is_real = real_pair(im, tol.tol_real);
        if (set.add(im, tol.dedupe)) grew = true;
      }
    }
  }
  std::stable_sort(set.items.begin(), set.items.end(),
                   [](const SolutionPair& a, const SolutionPair& b) {
                     return sort_key(a) < sort_key(b);
                   });
  rep.solutions = std::move(set.items);
  rep.classification = Classification::Finite;
  int count = 0;
  for (const SolutionPair& p : rep.solutions) count += p.multiplicity;
  std::ostringstream os;
  os << "emitted " << rep.solutions.size() << " pairs, " << count
     << " with multiplicity, ceiling " << rep.bezout_ceiling;
  rep.diagnostics.push_back(os.str());
  if (count > rep.bezout_ceiling)
    rep.diagnostics.push_back("warning: count exceeds the ceiling");
}

// One elimination sweep in a (possibly sheared) frame. Original
// coordinates: y1 = u1 + m*u2, y2 = u2.
std::vector<SolutionPair> enumerate_finite(const Configuration& config,
                                           const Configuration& pc,
                                           const RatMPoly& det2,
                                           const RatMPoly& circ2, int m,
                                           const ToleranceSettings& tol,
                                           std::vector<std::string>& diags) {
  const int d2 = det2.degree_in("y2");
  const int c2 = circ2.degree_in("y2");
  RatMPoly R;
  if (d2 >= 1 && c2 >= 1)
    R = resultant(det2, circ2, "y2");
  else if (d2 <= 0)
    R = det2;
  else
    R = circ2;
  if (R.is_zero()) throw degree_error("vanishing eliminant");
  RootFindResult rr = roots_of_eliminant(R, "y1", diags);

  std::vector<SolutionPair> out;
  int considered = 0, polished = 0;
  for (const ComplexRoot& r1 : rr.roots) {
    for (const ComplexRoot& r2 :
         joint_section_roots(det2, circ2, "y2", "y1", r1.value)) {
      ++considered;
      CPoint2 Y{r1.value + double(m) * r2.value, r2.value};
      CPoint2 X0;
      try {
        X0 = recover_X(pc, Y);
      } catch (const pole_error&) {
        continue;  // cleared-denominator locus, not a finite pair
      }
      auto pol = newton_polish(config, X0, Y, tol);
      if (!pol) continue;
      if (pol->multiplicity > 1)
        pol->multiplicity = std::max(2, r2.multiplicity);
      out.push_back(*pol);
      ++polished;
    }
  }
  std::ostringstream os;
  os << "frame m=" << m << ": " << considered << " candidates, " << polished
     << " polished";
  diags.push_back(os.str());
  return out;
}

void solve_main(const Configuration& config, const Configuration& pc,
                const ToleranceSettings& tol, SolveReport& rep) {
  ReducedSystem rs = build_reduced_system(pc);
  const int ddeg = rs.det_constraint.total_degree();
  const int cdeg = rs.circle_constraint.total_degree();

  if (rs.det_constraint.is_zero() && rs.circle_constraint.is_zero()) {
    rep.classification = Classification::PositiveDimensional;
    rep.witness_curve = RatMPoly();
    rep.diagnostics.push_back(
        "both reduced constraints vanish identically; every regular point "
        "extends");
    return;
  }
  if ((ddeg == 0 && !rs.det_constraint.is_zero()) ||
      (cdeg == 0 && !rs.circle_constraint.is_zero())) {
    rep.classification = Classification::Finite;
    rep.bezout_ceiling = 0;
    rep.diagnostics.push_back(
        "a reduced constraint is a nonzero constant; the system is empty");
    return;
  }

  rep.bezout_ceiling = std::min(48, ddeg * cdeg);
  if (auto w = detect_positive_dimensional(rs)) {
    rep.classification = Classification::PositiveDimensional;
    rep.witness_curve = *w;
    rep.diagnostics.push_back("common factor of the reduced constraints");
    return;
  }

  // A factor shared by both constraints but made of cleared denominators
  // is not a family, yet it would zero the resultant; divide it away.
  RatMPoly det0 = rs.det_constraint;
  RatMPoly circ0 = rs.circle_constraint;
  {
    RatMPoly g0 = mp_gcd(det0, circ0);
    if (g0.total_degree() >= 1) {
      auto d1 = det0.divided_exact(g0);
      auto d2 = circ0.divided_exact(g0);
      if (d1 && d2) {
        det0 = d1->primitive();
        circ0 = d2->primitive();
        rep.diagnostics.push_back(
            "removed a shared cleared-denominator factor before elimination");
      }
    }
  }

  std::vector<SolutionPair> found;
  bool done = false;
  for (int m = 0; m <= 3 && !done; ++m) {
    RatMPoly det2 = det0;
    RatMPoly circ2 = circ0;
    if (m > 0) {
      RatMPoly sub =
          RatMPoly::var("y1") + Rat(m) * RatMPoly::var("y2");
      det2 = det2.substituted("y1", sub);
      circ2 = circ2.substituted("y1", sub);
      rep.diagnostics.push_back("retry with sheared frame m=" +
                                std::to_string(m));
    }
    try {
      found = enumerate_finite(config, pc, det2, circ2, m, tol,
                               rep.diagnostics);
      done = true;
    } catch (const std::exception& e) {
      rep.diagnostics.push_back(std::string("frame m=") + std::to_string(m) +
                                " failed: " + e.what());
    }
  }
  if (!done) {
    rep.classification = Classification::Finite;
    rep.diagnostics.push_back("enumeration failed on every frame");
    return;
  }
  close_and_emit(config, std::move(found), tol, rep);
}

// Everything below supports configurations with all four anchors on one
// line, where no linear recovery frame exists. Work in the normalized
// frame (A at the origin, B at (1,0), anchors on the x-axis) with
//   p = |X-A|^2, q = |Y-A|^2,
// so each equation is bilinear in (p,q) and linear in each of x1, y1:
//   k_T (p + lx_T)(q + ly_T) - (p + lx_T) - (q + ly_T) = 0,
// lx_T = t_T (t_T - 2 x1). Eliminating p and then x1 leaves two curves in
// (q, y1) whose common factor detects families that are invisible in the
// (x1, y1) shadow.
struct AxisFrame {
  Configuration nc;
  PlaneTransform tr;
  std::array<Rat, 4> t;  // anchor positions on the axis
};

AxisFrame axis_frame(const Configuration& config) {
  AxisFrame af;
  auto pr = normalize(config);
  af.nc = pr.first;
  af.tr = pr.second;
  for (int i = 0; i < 4; ++i) af.t[i] = af.nc.anchors[i].x;
  return af;
}

// X from Y through the two leading circle relations in the axis frame;
// x2 takes the principal square root, the caller flips signs.
std::optional<CPoint2> axis_extend(const AxisFrame& af, const CPoint2& Yn) {
  std::array<Cx, 2> gbar;
  for (int i = 0; i < 2; ++i) {
    const Cx d1 = Yn[0] - rat_to<double>(af.t[i]);
    const Cx ny = d1 * d1 + Yn[1] * Yn[1];
    const double k = rat_to<double>(af.nc.constants[i]);
    const Cx den = k * ny - 1.0;
    if (std::abs(den) <= 1e-12 * (1.0 + std::abs(k * ny)))
      return std::nullopt;
    gbar[i] = ny / den;
  }
  // |X|^2 = gbar_A, |X - (1,0)|^2 = gbar_B.
  const Cx x1 = (gbar[0] - gbar[1] + 1.0) / 2.0;
  const Cx x2 = std::sqrt(gbar[0] - x1 * x1);
  return CPoint2{x1, x2};
}

void solve_collinear(const Configuration& config, const ToleranceSettings& tol,
                     SolveReport& rep) {
  AxisFrame af = axis_frame(config);
  rep.diagnostics.push_back(
      "all anchors collinear; solving on the axis frame");

  const RatMPoly p = RatMPoly::var("p");
  const RatMPoly q = RatMPoly::var("q");
  const RatMPoly x1 = RatMPoly::var("x1");
  const RatMPoly y1 = RatMPoly::var("y1");
  std::array<RatMPoly, 4> E;
  std::array<RatMPoly, 4> nyp;  // q + ly_T, the squared distance to T
  std::array<RatMPoly, 4> dly;  // its cleared denominator k_T ny - 1
  for (int i = 0; i < 4; ++i) {
    const Rat& ti = af.t[i];
    RatMPoly lx = RatMPoly(ti * ti) - (2 * ti) * x1;
    RatMPoly ly = RatMPoly(ti * ti) - (2 * ti) * y1;
    RatMPoly px = p + lx, qy = q + ly;
    E[i] = RatMPoly(af.nc.constants[i]) * (px * qy) - px - qy;
    nyp[i] = qy;
    dly[i] = RatMPoly(af.nc.constants[i]) * qy - RatMPoly(1);
  }
  std::array<RatMPoly, 4> F;
  for (int i = 1; i < 4; ++i) F[i] = resultant(E[0], E[i], "p");
  RatMPoly G1 = resultant(F[1], F[2], "x1");
  RatMPoly G2 = resultant(F[1], F[3], "x1");
  if (G1.is_zero() || G2.is_zero()) {
    rep.classification = Classification::PositiveDimensional;
    rep.witness_curve = RatMPoly();
    rep.diagnostics.push_back(
        "axis elimination collapsed; projections share a component");
    return;
  }

  // Both projections inherit spurious factors from the resultants (the
  // cleared denominators k_T|Y-T|^2 - 1 and the isotropic |Y-T|^2); left
  // in place they would report a fake family and zero out the final
  // elimination. Strip them from each projection up front.
  auto strip_known = [&](RatMPoly g) {
    bool changed = true;
    while (changed && g.total_degree() >= 1) {
      changed = false;
      for (int i = 0; i < 4; ++i) {
        for (const RatMPoly* f : {&dly[i], &nyp[i]}) {
          while (g.total_degree() >= 1) {
            auto d = g.divided_exact(*f);
            if (!d) break;
            g = d->primitive();
            changed = true;
          }
        }
      }
    }
    return g.primitive();
  };
  G1 = strip_known(G1);
  G2 = strip_known(G2);
  if (G1.total_degree() < 1 || G2.total_degree() < 1) {
    // A projection was nothing but spurious factors: away from the
    // excluded loci no x1 extension exists at all.
    rep.classification = Classification::Finite;
    rep.bezout_ceiling = 0;
    rep.diagnostics.push_back(
        "axis projections reduce to constants; no affine pairs");
    return;
  }
  RatMPoly g = mp_gcd(G1, G2);

  rep.bezout_ceiling = std::min(
      256, 4 * std::max(1, G1.total_degree()) * std::max(1, G2.total_degree()));

  if (g.total_degree() >= 1) {
    // Family detected. Pull the witness back to the original coordinates:
    // q = y1^2 + y2^2 in the axis frame, then undo the similarity.
    RatMPoly y2 = RatMPoly::var("y2");
    RatMPoly w = g.substituted("q", y1 * y1 + y2 * y2);
    w = w.substituted("y1", RatMPoly::var("u"));
    w = w.substituted("y2", RatMPoly::var("v"));
    const PlaneTransform& tr = af.tr;
    RatMPoly sy1 = RatMPoly::var("y1") - RatMPoly(tr.origin.x);
    RatMPoly sy2 = RatMPoly::var("y2") - RatMPoly(tr.origin.y);
    RatMPoly e1 = tr.lin_p * sy1 + tr.lin_q * sy2;
    RatMPoly e2 = (-tr.lin_q) * sy1 + tr.lin_p * sy2;
    w = w.substituted("u", e1).substituted("v", e2);
    rep.classification = Classification::PositiveDimensional;
    rep.witness_curve = w.primitive();
    rep.diagnostics.push_back(
        "common factor of the axis-frame projections in (q, y1)");
    return;
  }

  // Finite: eliminate q, then walk the (y1, q) candidates.
  const int g1q = G1.degree_in("q"), g2q = G2.degree_in("q");
  RatMPoly RU;
  if (g1q >= 1 && g2q >= 1)
    RU = resultant(G1, G2, "q");
  else if (g1q <= 0)
    RU = G1;
  else
    RU = G2;
  if (RU.is_zero()) {
    rep.classification = Classification::Finite;
    rep.diagnostics.push_back("axis elimination degenerated; no enumeration");
    return;
  }
  std::vector<SolutionPair> found;
  RootFindResult rr = roots_of_eliminant(RU, "y1", rep.diagnostics);
  for (const ComplexRoot& r1 : rr.roots) {
    for (const ComplexRoot& rq :
         joint_section_roots(G1, G2, "q", "y1", r1.value)) {
      const Cx rva = rq.value - r1.value * r1.value;  // y2^2 = q - y1^2
      const Cx y2v = std::sqrt(rva);
      for (double sy : {1.0, -1.0}) {
        CPoint2 Yn{r1.value, sy * y2v};
        auto Xn = axis_extend(af, Yn);
        if (!Xn) continue;
        for (double sx : {1.0, -1.0}) {
          CPoint2 Xs{(*Xn)[0], sx * (*Xn)[1]};
          auto [X1o, X2o] = af.tr.inverse_c(Xs[0], Xs[1]);
          auto [Y1o, Y2o] = af.tr.inverse_c(Yn[0], Yn[1]);
          auto pol =
              newton_polish(config, CPoint2{X1o, X2o}, CPoint2{Y1o, Y2o}, tol);
          if (!pol) continue;
          if (pol->multiplicity > 1)
            pol->multiplicity = std::max(2, rq.multiplicity);
          found.push_back(*pol);
        }
      }
    }
  }
  close_and_emit(config, std::move(found), tol, rep);
}

}  // namespace

double quartic_residual(const Configuration& config, const CPoint2& X,
                        const CPoint2& Y) {
  return residual_t<double>(config, X, Y);
}

std::optional<RatMPoly> detect_positive_dimensional(const ReducedSystem& rs) {
  RatMPoly g;
  if (rs.det_constraint.is_zero() && rs.circle_constraint.is_zero())
    return std::nullopt;
  if (rs.det_constraint.is_zero())
    g = rs.circle_constraint.primitive();
  else if (rs.circle_constraint.is_zero())
    g = rs.det_constraint.primitive();
  else
    g = mp_gcd(rs.det_constraint, rs.circle_constraint);
  if (g.total_degree() < 1) return std::nullopt;
  bool changed = true;
  while (changed && g.total_degree() >= 1) {
    changed = false;
    for (const RatMPoly& f : rs.cleared_factors) {
      if (f.total_degree() < 1) continue;
      while (g.total_degree() >= 1) {
        auto d = g.divided_exact(f);
        if (!d) break;
        g = d->primitive();
        changed = true;
      }
    }
  }
  if (g.total_degree() < 1) return std::nullopt;
  return g.primitive();
}

std::optional<SolutionPair> newton_polish(const Configuration& config,
                                          const CPoint2& X, const CPoint2& Y,
                                          const ToleranceSettings& tol) {
  using M4 = Eigen::Matrix4cd;
  using V4 = Eigen::Vector4cd;
  std::array<Cx, 4> z{X[0], X[1], Y[0], Y[1]};
  for (const Cx& c : z)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      return std::nullopt;

  std::array<Cx, 4> t1s, t2s;
  std::array<double, 4> ks;
  for (int i = 0; i < 4; ++i) {
    t1s[i] = rat_to<double>(config.anchors[i].x);
    t2s[i] = rat_to<double>(config.anchors[i].y);
    ks[i] = rat_to<double>(config.constants[i]);
  }
  auto eval = [&](const std::array<Cx, 4>& w, V4& Fv, M4* J, double& scale) {
    scale = 1.0;
    for (int i = 0; i < 4; ++i) {
      const Cx dx1 = w[0] - t1s[i], dx2 = w[1] - t2s[i];
      const Cx dy1 = w[2] - t1s[i], dy2 = w[3] - t2s[i];
      const Cx nx = dx1 * dx1 + dx2 * dx2;
      const Cx ny = dy1 * dy1 + dy2 * dy2;
      Fv(i) = ks[i] * nx * ny - nx - ny;
      scale = std::max(scale,
                       std::abs(ks[i] * nx * ny) + std::abs(nx) + std::abs(ny));
      if (J) {
        const Cx fx = ks[i] * ny - 1.0;
        const Cx fy = ks[i] * nx - 1.0;
        (*J)(i, 0) = 2.0 * dx1 * fx;
        (*J)(i, 1) = 2.0 * dx2 * fx;
        (*J)(i, 2) = 2.0 * dy1 * fy;
        (*J)(i, 3) = 2.0 * dy2 * fy;
      }
    }
  };
  auto maxabs = [](const V4& v) {
    double m = 0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(v(i)));
    return m;
  };

  std::array<Cx, 4> best = z;
  double best_res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 50; ++it) {
    V4 Fv;
    M4 J;
    double scale;
    eval(z, Fv, &J, scale);
    const double res = maxabs(Fv);
    if (!std::isfinite(res)) break;
    if (res < best_res) {
      best_res = res;
      best = z;
    }
    if (res <= 1e-15 * scale) break;
    V4 step = J.partialPivLu().solve(-Fv);
    if (!step.allFinite()) break;
    bool moved = false;
    double lam = 1.0;
    for (int h = 0; h < 7; ++h, lam *= 0.5) {
      std::array<Cx, 4> zn = z;
      for (int i = 0; i < 4; ++i) zn[i] += lam * step(i);
      V4 Fn;
      double sn;
      eval(zn, Fn, nullptr, sn);
      const double rn = maxabs(Fn);
      if (std::isfinite(rn) && rn < res) {
        z = zn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  V4 Fv;
  M4 J;
  double scale;
  eval(best, Fv, &J, scale);
  const double res = maxabs(Fv);
  if (!(res <= tol.tol_accept)) return std::nullopt;
  SolutionPair out;
  out.X = {best[0], best[1]};
  out.Y = {best[2], best[3]};
  out.residual = res;
  out.is_real = real_pair(out, tol.tol_real);
  Eigen::JacobiSVD<M4> svd(J);
  const auto& sv = svd.singularValues();
  out.multiplicity = (sv(3) < 1e-6 * sv(0)) ? 2 : 1;
  return out;
}

SolveReport solve(const Configuration& config, const ToleranceSettings& tol) {
  SolveReport rep;
  try {
    config.check_basic();
  } catch (const input_error& e) {
    rep.classification = Classification::InvalidInput;
    rep.diagnostics.push_back(std::string("input rejected: ") + e.what());
    return rep;
  }
  rep.validation = validate(config);
  if (!rep.validation.condition_i_ok)
    rep.diagnostics.push_back(
        "collinear anchor triple; continuing on an adapted frame");
  if (!rep.validation.condition_ii_ok)
    rep.diagnostics.push_back(
        "concurrent circle triple; eliminations may need a retry frame");

  const int oi = recovery_order(config);
  if (oi < 0) {
    solve_collinear(config, tol, rep);
    return rep;
  }
  Configuration pc = permuted(config, oi);
  if (oi > 0) {
    std::ostringstream os;
    os << "linear frame uses anchors " << label_name(Label(kOrders[oi][0]))
       << label_name(Label(kOrders[oi][1]))
       << label_name(Label(kOrders[oi][2]));
    rep.diagnostics.push_back(os.str());
  }
  solve_main(config, pc, tol, rep);
  return rep;
}

CertificateSummary certify(const SolveReport& report,
                           const Configuration& config) {
  CertificateSummary cs;
  cs.residual_ok = cs.swap_ok = cs.conjugate_ok = cs.cramer_ok =
      cs.determinant_ok = true;
  std::ostringstream det;
  const ToleranceSettings tol{};
  const double match = 1e-6;

  if (report.classification != Classification::Finite)
    det << "non-finite report; certificate covers the emitted list only. ";

  const int oi = recovery_order(config);
  std::optional<Configuration> pc;
  if (oi >= 0) pc = permuted(config, oi);

  using CL = std::complex<long double>;
  auto up2 = [](const CPoint2& P) {
    return std::array<CL, 2>{CL(P[0].real(), P[0].imag()),
                             CL(P[1].real(), P[1].imag())};
  };

  for (std::size_t idx = 0; idx < report.solutions.size(); ++idx) {
    const SolutionPair& p = report.solutions[idx];
    const double res =
        double(residual_t<long double>(config, up2(p.X), up2(p.Y)));
    cs.max_residual = std::max(cs.max_residual, res);
    if (res > tol.tol_accept) {
      cs.residual_ok = false;
      det << "pair " << idx << ": extended-precision residual " << res << ". ";
    }

    bool has_swap = false, has_conj = false;
    for (const SolutionPair& q : report.solutions) {
      if (coord_close(q.X[0], p.Y[0], match) &&
          coord_close(q.X[1], p.Y[1], match) &&
          coord_close(q.Y[0], p.X[0], match) &&
          coord_close(q.Y[1], p.X[1], match))
        has_swap = true;
      if (coord_close(q.X[0], std::conj(p.X[0]), match) &&
          coord_close(q.X[1], std::conj(p.X[1]), match) &&
          coord_close(q.Y[0], std::conj(p.Y[0]), match) &&
          coord_close(q.Y[1], std::conj(p.Y[1]), match))
        has_conj = true;
    }
    if (!has_swap) {
      cs.swap_ok = false;
      det << "pair " << idx << ": swapped partner missing. ";
    }
    if (!has_conj) {
      cs.conjugate_ok = false;
      det << "pair " << idx << ": conjugate partner missing. ";
    }

    if (pc) {
      try {
        CPoint2 Xr = recover_X(*pc, p.Y);
        if (!coord_close(Xr[0], p.X[0], match) ||
            !coord_close(Xr[1], p.X[1], match)) {
          cs.cramer_ok = false;
          det << "pair " << idx << ": linear recovery disagrees. ";
        }
      } catch (const std::exception&) {
        cs.cramer_ok = false;
        det << "pair " << idx << ": linear recovery failed. ";
      }
    }

    // Dependence determinant: rows of squared distances shifted by the
    // anchor norms, anchor coordinates, and ones.
    Eigen::Matrix4cd M;
    bool row_ok = true;
    for (int i = 0; i < 4 && row_ok; ++i) {
      const Cx t1 = rat_to<double>(config.anchors[i].x);
      const Cx t2 = rat_to<double>(config.anchors[i].y);
      const double k = rat_to<double>(config.constants[i]);
      const Cx d1 = p.Y[0] - t1, d2 = p.Y[1] - t2;
      const Cx ny = d1 * d1 + d2 * d2;
      const Cx den = k * ny - 1.0;
      if (std::abs(den) <= 1e-12 * (1.0 + std::abs(k * ny))) {
        row_ok = false;
        break;
      }
      const Cx gbar = ny / den;
      M(0, i) = gbar - (t1 * t1 + t2 * t2);
      M(1, i) = t1;
      M(2, i) = t2;
      M(3, i) = 1.0;
    }
    if (row_ok) {
      Cx dv = M.determinant();
      double scale = 0;
      for (int i = 0; i < 4; ++i) {
        double cn = 0;
        for (int r = 0; r < 4; ++r) cn = std::max(cn, std::abs(M(r, i)));
        scale = std::max(scale, cn);
      }
      double bound = 1e-6 * (1.0 + std::pow(scale, 4));
      if (std::abs(dv) > bound) {
        cs.determinant_ok = false;
        det << "pair " << idx << ": dependence determinant " << std::abs(dv)
            << " above " << bound << ". ";
      }
    } else {
      cs.determinant_ok = false;
      det << "pair " << idx << ": cleared denominator vanished. ";
    }
  }
  cs.details = det.str();
  return cs;
}

std::vector<SolutionPair> sample_witness_solutions(
    const Configuration& config, const RatMPoly& witness, int count,
    const ToleranceSettings& tol) {
  std::vector<SolutionPair> out;
  if (count <= 0 || witness.is_zero()) return out;
  const int d1 = witness.degree_in("y1");
  const int d2 = witness.degree_in("y2");
  if (std::max(d1, d2) < 1) return out;
  const std::string kept = d1 >= 1 ? "y1" : "y2";
  const std::string fixed = d1 >= 1 ? "y2" : "y1";

  const int oi = recovery_order(config);
  std::optional<Configuration> pc;
  std::optional<AxisFrame> af;
  if (oi >= 0)
    pc = permuted(config, oi);
  else
    af = axis_frame(config);

  const int sweeps = 8 * count;
  for (int j = 0; j < sweeps && int(out.size()) < count; ++j) {
    const double tv = -6.0 + 12.0 * (j + 0.5) / sweeps;
    Section s = section(witness, kept, fixed, Cx(tv, 0.0));
    if (s.kind != SectionKind::Roots) continue;
    for (const ComplexRoot& r : s.roots) {
      if (int(out.size()) >= count) break;
      CPoint2 Y = kept == "y1" ? CPoint2{r.value, Cx(tv, 0.0)}
                               : CPoint2{Cx(tv, 0.0), r.value};
      std::optional<CPoint2> X;
      if (pc) {
        try {
          X = recover_X(*pc, Y);
        } catch (const std::exception&) {
          continue;
        }
      } else {
        auto [y1n, y2n] = af->tr.forward_c(Y[0], Y[1]);
        auto Xn = axis_extend(*af, CPoint2{y1n, y2n});
        if (!Xn) continue;
        auto [x1o, x2o] = af->tr.inverse_c((*Xn)[0], (*Xn)[1]);
        X = CPoint2{x1o, x2o};
      }
      SolutionPair sp;
      sp.X = *X;
      sp.Y = Y;
      sp.residual = residual_t<double>(config, sp.X, sp.Y);
      if (sp.residual > tol.tol_accept) continue;
      sp.is_real = real_pair(sp, tol.tol_real);
      bool dup = false;
      for (const SolutionPair& q : out)
        if (same_pair(q, sp, tol.dedupe)) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(sp);
    }
  }
  return out;
}

}  // namespace quadanchor
