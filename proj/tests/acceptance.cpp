// Acceptance gate. Each numbered check prints exactly one PASS or FAIL line
// with a short account of what was measured; the exit status is the number
// of failed checks. Every tolerance is pinned here, in code, on purpose.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quadanchor/cpoly.hpp"
#include "quadanchor/elim.hpp"
#include "quadanchor/errors.hpp"
#include "quadanchor/examples.hpp"
#include "quadanchor/geometry.hpp"
#include "quadanchor/solver.hpp"
#include "quadanchor/sysbuild.hpp"

using namespace quadanchor;

namespace {

constexpr double kClosedFormTol = 1e-9;         // check 1: radical match
constexpr double kSquareBudgetSeconds = 5.0;    // check 1: wall clock
constexpr double kCurveResidualTol = 1e-10;     // check 2: lifted samples
constexpr double kOracleMatchTol = 1e-6;        // check 3: point matching
constexpr double kClosureTol = 1e-6;            // check 4: swap/conjugate
constexpr double kCramerTol = 1e-6;             // check 4: X recovery
constexpr double kDetIdentityTol = 1e-6;        // check 4: scaled
constexpr double kEquivarianceTol = 1e-8;       // check 4: translation/dilation
constexpr int kSolutionCeiling = 48;            // check 6
constexpr double kRootRelTol = 1e-8;            // check 7
constexpr double kPolycoreBudgetSeconds = 60.0; // check 7

struct Outcome {
  bool pass = false;
  std::string detail;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

Rat frac(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double pair_deviation(const SolutionPair& a, const SolutionPair& b) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i) {
    d = std::max(d, std::abs(a.X[i] - b.X[i]));
    d = std::max(d, std::abs(a.Y[i] - b.Y[i]));
  }
  return d;
}

int multiplicity_total(const SolveReport& rep) {
  int n = 0;
  for (const auto& s : rep.solutions) n += s.multiplicity;
  return n;
}

// Seeded rejection sampler for valid rational configurations.
struct ConfigGen {
  std::mt19937_64 rng;
  int max_den;
  explicit ConfigGen(unsigned long long seed, int den = 8)
      : rng(seed), max_den(den) {}

  Rat draw(double lo, double hi) {
    std::uniform_int_distribution<int> dd(1, max_den);
    const int d = dd(rng);
    std::uniform_int_distribution<long> nn(long(std::ceil(lo * d)),
                                           long(std::floor(hi * d)));
    return frac(nn(rng), d);
  }

  Configuration next() {
    while (true) {
      Configuration c;
      for (int i = 0; i < 4; ++i) c.anchors[i] = {draw(-3, 3), draw(-3, 3)};
      for (int i = 0; i < 4; ++i) c.constants[i] = draw(0.25, 4);
      try {
        c.check_basic();
      } catch (const input_error&) {
        continue;
      }
      if (!validate(c).ok()) continue;
      return c;
    }
  }
};

// ---------------------------------------------------------------------------
// Check 1: the square example reproduces its radical closed forms.

Outcome check_square(std::vector<int>& counts) {
  const auto t0 = clock_type::now();
  const SolveReport rep = solve(example_square());
  const double elapsed = seconds_since(t0);
  counts.push_back(multiplicity_total(rep));

  Outcome o;
  std::ostringstream d;
  if (rep.solutions.size() != 24) {
    o.detail = "expected 24 solutions, got " + std::to_string(rep.solutions.size());
    return o;
  }

  double min_sep = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < rep.solutions.size(); ++i)
    for (size_t j = i + 1; j < rep.solutions.size(); ++j)
      min_sep = std::min(min_sep, pair_deviation(rep.solutions[i], rep.solutions[j]));

  int real_count = 0;
  for (const auto& s : rep.solutions) real_count += s.is_real;

  const auto expected = example_square_pairs();
  std::vector<char> used(rep.solutions.size(), 0);
  double worst = 0.0;
  bool matched = true;
  for (const auto& e : expected) {
    double best = std::numeric_limits<double>::infinity();
    size_t at = 0;
    for (size_t j = 0; j < rep.solutions.size(); ++j) {
      if (used[j]) continue;
      SolutionPair probe;
      probe.X = e.X;
      probe.Y = e.Y;
      const double dev = pair_deviation(probe, rep.solutions[j]);
      if (dev < best) {
        best = dev;
        at = j;
      }
    }
    if (best > kClosedFormTol) {
      matched = false;
      break;
    }
    used[at] = 1;
    worst = std::max(worst, best);
  }

  o.pass = matched && real_count == 16 && min_sep > 1e-6 &&
           elapsed < kSquareBudgetSeconds;
  d << "24 distinct pairs, " << real_count << " real, worst closed-form deviation "
    << fmt(worst) << ", min separation " << fmt(min_sep) << ", " << fmt(elapsed)
    << " s";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Check 2: the collinear example is a family and its curve lifts solve the
// system.

Outcome check_family() {
  const SolveReport rep = solve(example_collinear());
  Outcome o;
  if (rep.classification != Classification::PositiveDimensional) {
    o.detail = "expected a positive-dimensional classification";
    return o;
  }
  const Configuration config = example_collinear();
  const auto lifts = example_collinear_lifts(100);
  double worst = 0.0;
  for (const auto& e : lifts)
    worst = std::max(worst, quartic_residual(config, e.X, e.Y));
  o.pass = worst <= kCurveResidualTol;
  o.detail = "family detected, 100 curve lifts, worst residual " + fmt(worst);
  return o;
}

// ---------------------------------------------------------------------------
// Check 3: real solutions agree with an independent multistart Newton
// oracle on seeded random configurations.

using Vec4 = Eigen::Vector4d;

// The oracle never touches the solver: plain damped Newton on the four
// cleared quartics, from a coarse grid plus seeded random starts. Real
// solutions keep distance >= 1/sqrt(k_T) >= 1/2 from every anchor, so
// converged points hugging an anchor are clearing artifacts and get cut.
std::vector<Vec4> newton_oracle(const Configuration& c,
                                unsigned long long seed) {
  double ax[4], ay[4], kk[4];
  for (int i = 0; i < 4; ++i) {
    ax[i] = c.anchors[i].x.get_d();
    ay[i] = c.anchors[i].y.get_d();
    kk[i] = c.constants[i].get_d();
  }

  auto eval = [&](const Vec4& v, Vec4& f, Eigen::Matrix4d* J) {
    for (int t = 0; t < 4; ++t) {
      const double dx1 = v[0] - ax[t], dx2 = v[1] - ay[t];
      const double dy1 = v[2] - ax[t], dy2 = v[3] - ay[t];
      const double nx = dx1 * dx1 + dx2 * dx2;
      const double ny = dy1 * dy1 + dy2 * dy2;
      f[t] = kk[t] * nx * ny - nx - ny;
      if (J) {
        (*J)(t, 0) = 2 * dx1 * (kk[t] * ny - 1);
        (*J)(t, 1) = 2 * dx2 * (kk[t] * ny - 1);
        (*J)(t, 2) = 2 * dy1 * (kk[t] * nx - 1);
        (*J)(t, 3) = 2 * dy2 * (kk[t] * nx - 1);
      }
    }
  };
  auto rel_ok = [&](const Vec4& v, double tol) {
    for (int t = 0; t < 4; ++t) {
      const double dx1 = v[0] - ax[t], dx2 = v[1] - ay[t];
      const double dy1 = v[2] - ax[t], dy2 = v[3] - ay[t];
      const double nx = dx1 * dx1 + dx2 * dx2;
      const double ny = dy1 * dy1 + dy2 * dy2;
      const double scale = std::abs(kk[t]) * nx * ny + nx + ny + 1.0;
      const double r = std::abs(kk[t] * nx * ny - nx - ny);
      if (r > tol * scale) return false;
    }
    return true;
  };

  std::vector<Vec4> starts;
  const double grid[7] = {-4.5, -3.0, -1.5, 0.0, 1.5, 3.0, 4.5};
  for (double a : grid)
    for (double b : grid)
      for (double e : grid)
        for (double g : grid) starts.push_back(Vec4(a, b, e, g));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u6(-6.0, 6.0), u12(-12.0, 12.0);
  for (int i = 0; i < 2599; ++i)
    starts.push_back(Vec4(u6(rng), u6(rng), u6(rng), u6(rng)));
  for (int i = 0; i < 400; ++i)
    starts.push_back(Vec4(u12(rng), u12(rng), u12(rng), u12(rng)));

  std::vector<Vec4> roots;
  for (const Vec4& s0 : starts) {
    Vec4 v = s0, f;
    Eigen::Matrix4d J;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      eval(v, f, &J);
      if (rel_ok(v, 1e-13)) {
        converged = true;
        break;
      }
      const Vec4 step = J.partialPivLu().solve(-f);
      if (!step.allFinite()) break;
      double lam = 1.0;
      const double r0 = f.lpNorm<Eigen::Infinity>();
      Vec4 best = v + step;
      bool moved = false;
      for (int h = 0; h < 7; ++h) {
        Vec4 cand = v + lam * step;
        Vec4 fc;
        eval(cand, fc, nullptr);
        if (fc.allFinite() && fc.lpNorm<Eigen::Infinity>() < r0) {
          best = cand;
          moved = true;
          break;
        }
        lam *= 0.5;
      }
      if (!moved) break;
      v = best;
    }
    if (!converged) continue;
    if (v.lpNorm<Eigen::Infinity>() > 50.0) continue;
    bool near_anchor = false;
    for (int t = 0; t < 4 && !near_anchor; ++t) {
      const double nx = (v[0] - ax[t]) * (v[0] - ax[t]) +
                        (v[1] - ay[t]) * (v[1] - ay[t]);
      const double ny = (v[2] - ax[t]) * (v[2] - ax[t]) +
                        (v[3] - ay[t]) * (v[3] - ay[t]);
      near_anchor = std::min(nx, ny) < 0.0625;
    }
    if (near_anchor) continue;
    bool fresh = true;
    for (const Vec4& r : roots) {
      if ((r - v).lpNorm<Eigen::Infinity>() <=
          1e-6 * (1.0 + r.lpNorm<Eigen::Infinity>())) {
        fresh = false;
        break;
      }
    }
    if (fresh) roots.push_back(v);
  }
  return roots;
}

Outcome check_oracle(std::vector<int>& counts) {
  ConfigGen gen(0x5eed0003ULL, 8);
  Outcome o;
  std::ostringstream d;
  int solver_unmatched = 0, oracle_unmatched = 0, total_real = 0;
  for (int i = 0; i < 20; ++i) {
    const Configuration c = gen.next();
    const SolveReport rep = solve(c);
    if (rep.classification != Classification::Finite) {
      o.detail = "configuration " + std::to_string(i) + " did not classify Finite";
      return o;
    }
    counts.push_back(multiplicity_total(rep));

    std::vector<Vec4> mine;
    for (const auto& s : rep.solutions)
      if (s.is_real)
        mine.push_back(Vec4(s.X[0].real(), s.X[1].real(), s.Y[0].real(),
                            s.Y[1].real()));
    const std::vector<Vec4> ref = newton_oracle(c, 0xacce55ULL + i);
    total_real += int(mine.size());

    for (const Vec4& m : mine) {
      bool hit = false;
      for (const Vec4& r : ref)
        if ((m - r).lpNorm<Eigen::Infinity>() <= kOracleMatchTol) {
          hit = true;
          break;
        }
      solver_unmatched += !hit;
    }
    for (const Vec4& r : ref) {
      bool hit = false;
      for (const Vec4& m : mine)
        if ((m - r).lpNorm<Eigen::Infinity>() <= kOracleMatchTol) {
          hit = true;
          break;
        }
      oracle_unmatched += !hit;
    }
  }
  o.pass = solver_unmatched == 0 && oracle_unmatched == 0;
  d << "20 configurations, " << total_real << " real pairs; unmatched: "
    << solver_unmatched << " emitted, " << oracle_unmatched << " oracle";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Check 4: invariant suite on 200 randomized cases.

bool sets_coincide(const std::vector<SolutionPair>& a,
                   const std::vector<SolutionPair>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool hit = false;
    for (const auto& y : b)
      if (pair_deviation(x, y) <= tol) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  for (const auto& y : b) {
    bool hit = false;
    for (const auto& x : a)
      if (pair_deviation(x, y) <= tol) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

Outcome check_invariants() {
  ConfigGen gen(0x5eed0004ULL, 6);
  std::mt19937_64 aux(0xa0040004ULL);
  Outcome o;
  std::ostringstream d;

  int cases = 0;
  int fail_swap = 0, fail_conj = 0, fail_cramer = 0, fail_det = 0;
  int fail_translate = 0, fail_dilate = 0, not_finite = 0;
  double worst_cramer = 0.0, worst_det = 0.0;

  const Rat dil_choices[6] = {frac(1, 2), frac(2, 3), frac(3, 2), frac(2),
                              frac(5, 2), frac(3)};

  for (int i = 0; i < 200; ++i) {
    const Configuration c = gen.next();
    const SolveReport rep = solve(c);
    ++cases;
    if (rep.classification != Classification::Finite) {
      ++not_finite;
      continue;
    }

    // Swap and conjugate closure of the emitted set.
    for (const auto& s : rep.solutions) {
      SolutionPair sw;
      sw.X = s.Y;
      sw.Y = s.X;
      bool hit = false;
      for (const auto& t : rep.solutions)
        if (pair_deviation(sw, t) <= kClosureTol) {
          hit = true;
          break;
        }
      fail_swap += !hit;

      SolutionPair cj;
      for (int j = 0; j < 2; ++j) {
        cj.X[j] = std::conj(s.X[j]);
        cj.Y[j] = std::conj(s.Y[j]);
      }
      hit = false;
      for (const auto& t : rep.solutions)
        if (pair_deviation(cj, t) <= kClosureTol) {
          hit = true;
          break;
        }
      fail_conj += !hit;
    }

    // Cramer recovery of X from Y, and the four-anchor dependence
    // determinant on the transfer values.
    for (const auto& s : rep.solutions) {
      try {
        const CPoint2 back = recover_X(c, s.Y);
        const double dev = std::max(std::abs(back[0] - s.X[0]),
                                    std::abs(back[1] - s.X[1]));
        worst_cramer = std::max(worst_cramer, dev);
        fail_cramer += dev > kCramerTol;
      } catch (const pole_error&) {
      } catch (const collinear_error&) {
      }
      try {
        Eigen::Matrix4cd M;
        double entry_max = 0.0;
        for (int t = 0; t < 4; ++t) {
          const Label l = kLabels[size_t(t)];
          const GammaFn gf = gamma(c, l);
          // The transfer quotient at Y is |X-T|^2 - |T|^2, affine in T, so
          // this column is a combination of the other three and det M = 0.
          M(t, 0) = gf.eval(s.Y[0], s.Y[1]);
          M(t, 1) = c.anchor(l).x.get_d();
          M(t, 2) = c.anchor(l).y.get_d();
          M(t, 3) = 1.0;
          for (int j = 0; j < 4; ++j)
            entry_max = std::max(entry_max, std::abs(M(t, j)));
        }
        const double det = std::abs(M.determinant());
        const double bound =
            kDetIdentityTol * std::pow(1.0 + entry_max, 4);
        worst_det = std::max(worst_det, det / std::pow(1.0 + entry_max, 4));
        fail_det += det > bound;
      } catch (const pole_error&) {
      }
    }

    // Translation equivariance.
    PlaneTransform shift;
    shift.origin = Point2{-gen.draw(-2, 2), -gen.draw(-2, 2)};
    const Configuration ct = transformed(c, shift);
    const SolveReport rept = solve(ct);
    std::vector<SolutionPair> mapped;
    const double sx = -shift.origin.x.get_d(), sy = -shift.origin.y.get_d();
    for (const auto& s : rep.solutions) {
      SolutionPair m = s;
      m.X[0] += sx;
      m.X[1] += sy;
      m.Y[0] += sx;
      m.Y[1] += sy;
      mapped.push_back(m);
    }
    fail_translate += !sets_coincide(mapped, rept.solutions, kEquivarianceTol);

    // Dilation rule: anchors scale by s, constants by 1/s^2, points by s.
    PlaneTransform dil;
    dil.lin_p = dil_choices[aux() % 6];
    const Configuration cd = transformed(c, dil);
    const SolveReport repd = solve(cd);
    mapped.clear();
    const double sc = dil.lin_p.get_d();
    for (const auto& s : rep.solutions) {
      SolutionPair m = s;
      for (int j = 0; j < 2; ++j) {
        m.X[j] *= sc;
        m.Y[j] *= sc;
      }
      mapped.push_back(m);
    }
    fail_dilate += !sets_coincide(mapped, repd.solutions, kEquivarianceTol);
  }

  o.pass = not_finite == 0 && fail_swap == 0 && fail_conj == 0 &&
           fail_cramer == 0 && fail_det == 0 && fail_translate == 0 &&
           fail_dilate == 0;
  d << cases << " cases; failures: swap " << fail_swap << ", conjugate "
    << fail_conj << ", recovery " << fail_cramer << " (worst " << fmt(worst_cramer)
    << "), determinant " << fail_det << " (worst scaled " << fmt(worst_det)
    << "), translation " << fail_translate << ", dilation " << fail_dilate;
  if (not_finite) d << ", non-finite " << not_finite;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Check 5: exact symbolic facts about the squared-distance system, compared
// against the documented closed forms. No tolerances: rational equality.

Outcome check_symbolic() {
  Configuration c;
  c.anchors = {Point2{frac(0), frac(0)}, Point2{frac(1), frac(0)},
               Point2{frac(2, 3), frac(5, 7)}, Point2{frac(-3, 5), frac(7, 11)}};
  c.constants = {frac(3, 2), frac(5, 3), frac(7, 4), frac(11, 6)};
  const GammaSystem gs = build_gamma_system(c);

  const Rat c1 = c.anchors[2].x, c2 = c.anchors[2].y;
  const Rat d1 = c.anchors[3].x, d2 = c.anchors[3].y;
  const Rat kA = c.constants[0], kB = c.constants[1], kC = c.constants[2],
            kD = c.constants[3];
  const Rat nc = c1 * c1 + c2 * c2;
  const Rat nd = d1 * d1 + d2 * d2;

  // Documented top of H: a unique degree-six monomial gA^2 gB^2 gC^2 with
  // coefficient (nc - 2 c1 + 1)(nc kA - 2 c1 kA + 1).
  const Rat quoted_h = (nc - 2 * c1 + 1) * (nc * kA - 2 * c1 * kA + 1);
  // Documented top of F: a unique degree-four monomial gA gB gC gD with
  // coefficient kA kB kC kD (nc d2 - nd c2 - c1 d2 + c2 d1)
  //           + kB kC kD (c2 d1 - c1 d2 + d2 - c2).
  const Rat quoted_f =
      kA * kB * kC * kD * (nc * d2 - nd * c2 - c1 * d2 + c2 * d1) +
      kB * kC * kD * (c2 * d1 - c1 * d2 + d2 - c2);

  const bool h_degree = gs.H.total_degree() == 6;

  int h_top_terms = 0;
  bool h_top_monomial = false;
  Rat h_top_coeff;
  gs.H.for_each_term([&](const std::vector<int>& e, const Rat& co) {
    int tot = 0;
    for (int x : e) tot += x;
    if (tot != 6) return;
    ++h_top_terms;
    h_top_monomial = std::all_of(e.begin(), e.end(), [](int x) { return x == 2; });
    h_top_coeff = co;
  });
  const bool h_lead = h_top_terms == 1 && h_top_monomial && h_top_coeff == quoted_h;

  const bool f_degree = gs.F.total_degree() == 4;
  bool f_multilinear = true;
  for (const char* v : {"gA", "gB", "gC", "gD"})
    f_multilinear = f_multilinear && gs.F.degree_in(v) <= 1;

  int f_top_terms = 0;
  Rat f_top_coeff;
  gs.F.for_each_term([&](const std::vector<int>& e, const Rat& co) {
    int tot = 0;
    for (int x : e) tot += x;
    if (tot != 4) return;
    ++f_top_terms;
    f_top_coeff = co;
  });
  const bool f_lead = f_top_terms == 1 && f_top_coeff == quoted_f;

  const int bezout = gs.H.total_degree() * gs.F.total_degree() *
                     gs.linear_relation.total_degree() *
                     gs.quadric_relation.total_degree();
  const bool bez = bezout == 48;

  Outcome o;
  o.pass = h_degree && h_lead && f_degree && f_multilinear && f_lead && bez;
  std::ostringstream d;
  d << "deg(H)=6 " << (h_degree ? "ok" : "FAIL") << "; H top coeff "
    << (h_lead ? "ok" : "MISMATCH (computed " + h_top_coeff.get_str() +
                            ", documented " + quoted_h.get_str() + ")")
    << "; deg(F)=4 " << (f_degree ? "ok" : "FAIL") << "; F multilinear "
    << (f_multilinear ? "ok" : "FAIL") << "; F top coeff "
    << (f_lead ? "ok" : "MISMATCH (computed " + f_top_coeff.get_str() +
                            ", documented " + quoted_f.get_str() + ")")
    << "; degree product " << bezout << (bez ? " = 48" : " != 48");
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Check 6: no report exceeds the 48 ceiling, counting multiplicity.

Outcome check_ceiling(const std::vector<int>& counts) {
  Outcome o;
  int worst = 0;
  for (int n : counts) worst = std::max(worst, n);
  const int square = counts.empty() ? -1 : counts.front();
  o.pass = !counts.empty() && worst <= kSolutionCeiling && square == 24;
  o.detail = std::to_string(counts.size()) + " reports, max count " +
             std::to_string(worst) + ", square example " +
             std::to_string(square);
  return o;
}

// ---------------------------------------------------------------------------
// Check 7: elimination-layer spot suite under a time budget.

RatMPoly random_bipoly(std::mt19937_64& rng, int dx, int dy, bool need_x) {
  std::uniform_int_distribution<int> co(-3, 3);
  const RatMPoly x = RatMPoly::var("x"), y = RatMPoly::var("y");
  RatMPoly p;
  while (true) {
    p = RatMPoly();
    for (int i = 0; i <= dx; ++i)
      for (int j = 0; j <= dy; ++j) {
        const int v = co(rng);
        if (v != 0) p += Rat(v) * x.pow(unsigned(i)) * y.pow(unsigned(j));
      }
    if (p.is_zero()) continue;
    if (need_x && p.degree_in("x") < 1) continue;
    return p;
  }
}

Outcome check_elimination() {
  const auto t0 = clock_type::now();
  std::mt19937_64 rng(0x5eed0007ULL);
  Outcome o;
  std::ostringstream d;

  // Planted common factors force a vanishing resultant.
  int zero_ok = 0;
  for (int i = 0; i < 12; ++i) {
    const RatMPoly w = random_bipoly(rng, 2, 1, true);
    const RatMPoly u = random_bipoly(rng, 2, 1, true);
    const RatMPoly v = random_bipoly(rng, 2, 1, true);
    const RatMPoly r = resultant(w * u, w * v, "x");
    zero_ok += r.is_zero();
  }

  // Specialization cross-check: the resultant evaluated at a point equals
  // the Sylvester determinant of the specialized univariate pair.
  int eval_ok = 0;
  for (int i = 0; i < 12; ++i) {
    const RatMPoly u = random_bipoly(rng, 3, 2, true);
    const RatMPoly v = random_bipoly(rng, 2, 2, true);
    const RatMPoly r = resultant(u, v, "x");
    Rat t(2);
    const auto lc_at = [&](const RatMPoly& p) {
      return p.leading_coeff_wrt("x").eval_rat({{"y", t}});
    };
    while (lc_at(u) == 0 || lc_at(v) == 0) t += 1;

    auto dense = [&](const RatMPoly& p) {
      std::vector<Rat> out;
      for (const RatMPoly& cc : p.coeffs_wrt("x")) out.push_back(cc.eval_rat({{"y", t}}));
      return out;
    };
    const std::vector<Rat> a = dense(u), b = dense(v);
    const int m = int(a.size()) - 1, n = int(b.size()) - 1;
    std::vector<std::vector<Rat>> syl(size_t(m + n),
                                      std::vector<Rat>(size_t(m + n), Rat(0)));
    for (int row = 0; row < n; ++row)
      for (int j = 0; j <= m; ++j) syl[size_t(row)][size_t(row + j)] = a[size_t(m - j)];
    for (int row = 0; row < m; ++row)
      for (int j = 0; j <= n; ++j)
        syl[size_t(n + row)][size_t(row + j)] = b[size_t(n - j)];
    eval_ok += rational_det(syl) == r.eval_rat({{"y", t}});
  }

  // Root reconstruction on planted well-separated roots up to degree 24.
  std::uniform_real_distribution<double> mag(0.3, 2.2), ang(0.0, 6.2831853);
  int roots_ok = 0, roots_total = 0;
  double worst_rel = 0.0;
  for (int deg : {8, 12, 18, 24}) {
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<Cx> planted;
      while (int(planted.size()) < deg) {
        const Cx cand = std::polar(mag(rng), ang(rng));
        bool ok = true;
        for (const Cx& p : planted)
          if (std::abs(p - cand) < 0.2) ok = false;
        if (ok) planted.push_back(cand);
      }
      std::vector<Cx> coeffs{1.0};
      for (const Cx& r : planted) {
        coeffs.push_back(0.0);
        for (size_t j = coeffs.size() - 1; j > 0; --j)
          coeffs[j] = coeffs[j - 1] - r * coeffs[j];
        coeffs[0] *= -r;
      }
      const RootFindResult found = univariate_roots(CPoly(coeffs));
      ++roots_total;
      bool all_hit = int(found.roots.size()) == deg;
      double local = 0.0;
      for (const Cx& p : planted) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : found.roots)
          best = std::min(best, std::abs(f.value - p) / (1.0 + std::abs(p)));
        local = std::max(local, best);
      }
      all_hit = all_hit && local <= kRootRelTol &&
                found.reconstruction_error <= kRootRelTol;
      worst_rel = std::max(worst_rel, local);
      roots_ok += all_hit;
    }
  }

  // Planted gcd cases: the computed gcd must absorb the planted factor and
  // divide both inputs exactly.
  int gcd_ok = 0;
  const RatMPoly xv = RatMPoly::var("x");
  std::uniform_int_distribution<int> co(-5, 5), dg(4, 12);
  for (int i = 0; i < 10; ++i) {
    auto rand_uni = [&](int degree) {
      RatMPoly p;
      while (p.degree_in("x") != degree) {
        p = RatMPoly();
        for (int j = 0; j <= degree; ++j) {
          const int v = co(rng);
          if (v != 0) p += Rat(v) * xv.pow(unsigned(j));
        }
      }
      return p;
    };
    const RatMPoly g = rand_uni(dg(rng));
    const RatMPoly a = g * rand_uni(dg(rng));
    const RatMPoly b = g * rand_uni(dg(rng));
    const RatMPoly got = mp_gcd(a, b);
    gcd_ok += bool(a.divided_exact(got)) && bool(b.divided_exact(got)) &&
              bool(got.divided_exact(g.primitive()));
  }
  for (int i = 0; i < 5; ++i) {
    const RatMPoly g = random_bipoly(rng, 1, 1, true);
    const RatMPoly a = g * random_bipoly(rng, 2, 1, true);
    const RatMPoly b = g * random_bipoly(rng, 1, 2, true);
    const RatMPoly got = mp_gcd(a, b);
    gcd_ok += bool(a.divided_exact(got)) && bool(b.divided_exact(got)) &&
              bool(got.divided_exact(g.primitive()));
  }

  const double elapsed = seconds_since(t0);
  o.pass = zero_ok == 12 && eval_ok == 12 && roots_ok == roots_total &&
           gcd_ok == 15 && elapsed < kPolycoreBudgetSeconds;
  d << "planted-zero resultants " << zero_ok << "/12, specialization "
    << eval_ok << "/12, root reconstruction " << roots_ok << "/" << roots_total
    << " (worst rel " << fmt(worst_rel) << "), gcd division " << gcd_ok
    << "/15, " << fmt(elapsed) << " s";
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  std::vector<int> counts;

  const Outcome results[7] = {
      check_square(counts),   check_family(),    check_oracle(counts),
      check_invariants(),     check_symbolic(),  check_ceiling(counts),
      check_elimination(),
  };

  int failed = 0;
  for (int i = 0; i < 7; ++i) {
    failed += !results[i].pass;
    std::printf("criterion %d: %s  (%s)\n", i + 1,
                results[i].pass ? "PASS" : "FAIL", results[i].detail.c_str());
  }
  std::printf("%d of 7 criteria passed\n", 7 - failed);
  return failed;
}
