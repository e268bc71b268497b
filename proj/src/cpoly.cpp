#include "quadanchor/cpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quadanchor/errors.hpp"

namespace quadanchor {

namespace {

double cabs(Cx z) { return std::abs(z); }

}  // namespace

CPoly::CPoly(std::vector<Cx> ascending) : c_(std::move(ascending)) {
  while (!c_.empty() && c_.back() == Cx(0.0, 0.0)) c_.pop_back();
}

Cx CPoly::eval(Cx z) const {
  Cx acc(0.0, 0.0);
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
  return acc;
}

void CPoly::eval_all(Cx z, Cx& p, Cx& dp, Cx& ddp) const {
  p = Cx(0.0, 0.0);
  dp = Cx(0.0, 0.0);
  ddp = Cx(0.0, 0.0);
  for (std::size_t k = c_.size(); k-- > 0;) {
    ddp = ddp * z + dp;
    dp = dp * z + p;
    p = p * z + c_[k];
  }
  ddp *= 2.0;
}

CPoly CPoly::derivative() const {
  if (c_.size() <= 1) return CPoly();
  std::vector<Cx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k)
    d[k - 1] = c_[k] * double(k);
  return CPoly(std::move(d));
}

CPoly CPoly::from_exact(const RatMPoly& p, const std::string& var) {
  for (const auto& v : p.vars())
    if (v != var)
      throw std::invalid_argument("polynomial is not univariate in " + var);
  Rat scale = p.max_abs_coeff();
  if (scale == 0) return CPoly();
  std::vector<RatMPoly> cs = p.coeffs_wrt(var);
  std::vector<Cx> out(cs.size());
  for (std::size_t k = 0; k < cs.size(); ++k)
    out[k] = Cx(rat_to_double_scaled(cs[k].constant_value(), scale), 0.0);
  return CPoly(std::move(out));
}

CPoly CPoly::dropped_tiny_leading(double rel) const {
  double maxabs = 0.0;
  for (const auto& v : c_) maxabs = std::max(maxabs, cabs(v));
  std::vector<Cx> out = c_;
  while (!out.empty() && cabs(out.back()) <= rel * maxabs) out.pop_back();
  return CPoly(std::move(out));
}

CPoly CPoly::specialize(const RatMPoly& p, const std::string& kept,
                        const std::string& fixed, Cx value) {
  for (const auto& v : p.vars())
    if (v != kept && v != fixed)
      throw std::invalid_argument("unexpected variable " + v);
  Rat scale = p.max_abs_coeff();
  if (scale == 0) return CPoly();
  RatMPoly q = p.scaled(Rat(1) / scale);
  std::vector<RatMPoly> cs = q.coeffs_wrt(kept);
  std::vector<Cx> out(cs.size());
  std::map<std::string, Cx> pt{{fixed, value}};
  for (std::size_t k = 0; k < cs.size(); ++k)
    out[k] = cs[k].is_constant() ? Cx(cs[k].constant_value().get_d(), 0.0)
                                 : cs[k].eval(pt);
  return CPoly(std::move(out));
}

namespace {

// One Newton pass; multiple-root variant switches to the ratio u = p/p'
// whose zeros are always simple.
Cx polish_root(const CPoly& poly, Cx z, bool multiple) {
  Cx best = z;
  double best_val = cabs(poly.eval(z));
  for (int it = 0; it < 40; ++it) {
    Cx p, dp, ddp;
    poly.eval_all(z, p, dp, ddp);
    Cx step;
    if (multiple) {
      Cx denom = dp * dp - p * ddp;
      if (cabs(denom) == 0.0) break;
      step = p * dp / denom;
    } else {
      if (cabs(dp) == 0.0) break;
      step = p / dp;
    }
    z -= step;
    double val = cabs(poly.eval(z));
    if (val < best_val) {
      best_val = val;
      best = z;
    }
    if (cabs(step) < 1e-16 * (1.0 + cabs(z))) break;
  }
  return best;
}

double reconstruction_check(const std::vector<ComplexRoot>& roots,
                            const std::vector<Cx>& monic) {
  // Compare the monic coefficients against the product over computed roots,
  // in the scaled variable z = s*w so nothing overflows.
  std::size_t n = monic.size() - 1;
  double s = 1.0;
  for (const auto& r : roots) s = std::max(s, cabs(r.value));
  std::vector<Cx> prod{Cx(1.0, 0.0)};
  for (const auto& r : roots)
    for (int m = 0; m < r.multiplicity; ++m) {
      std::vector<Cx> next(prod.size() + 1, Cx(0.0, 0.0));
      Cx rs = r.value / s;
      for (std::size_t k = 0; k < prod.size(); ++k) {
        next[k + 1] += prod[k];
        next[k] -= prod[k] * rs;
      }
      prod = std::move(next);
    }
  double err = 0.0, mag = 1.0;
  double spow = 1.0;  // s^(k-n) built downward so it only shrinks
  for (std::size_t k = n + 1; k-- > 0;) {
    Cx target = monic[k] * spow;
    err = std::max(err, cabs(prod[k] - target));
    mag = std::max(mag, cabs(target));
    spow /= s;
  }
  return err / mag;
}

}  // namespace

namespace {

// Complex arithmetic on GMP floats for the extended-precision pass. The
// precision rides along on the operands: every value is constructed at the
// working precision, and gmpxx promotes expression results to the widest
// operand.
struct MC {
  mpf_class re, im;
};

MC operator+(const MC& a, const MC& b) {
  return {mpf_class(a.re + b.re), mpf_class(a.im + b.im)};
}
MC operator-(const MC& a, const MC& b) {
  return {mpf_class(a.re - b.re), mpf_class(a.im - b.im)};
}
MC operator*(const MC& a, const MC& b) {
  return {mpf_class(a.re * b.re - a.im * b.im),
          mpf_class(a.re * b.im + a.im * b.re)};
}
MC operator/(const MC& a, const MC& b) {
  const mpf_class d(b.re * b.re + b.im * b.im);
  return {mpf_class((a.re * b.re + a.im * b.im) / d),
          mpf_class((a.im * b.re - a.re * b.im) / d)};
}
mpf_class abs2(const MC& a) { return mpf_class(a.re * a.re + a.im * a.im); }
bool is_zero(const MC& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }

// log2 |z| without leaving mpf range; -1e6 stands in for -infinity.
double log2_abs(const MC& z) {
  const mpf_class m = abs2(z);
  if (sgn(m) == 0) return -1e6;
  long e = 0;
  const double d = mpf_get_d_2exp(&e, m.get_mpf_t());
  return 0.5 * (std::log2(d) + double(e));
}

// z *= 2^e for possibly negative e.
void scale_2exp(mpf_class& v, long e) {
  if (e >= 0)
    mpf_mul_2exp(v.get_mpf_t(), v.get_mpf_t(), static_cast<unsigned long>(e));
  else
    mpf_div_2exp(v.get_mpf_t(), v.get_mpf_t(), static_cast<unsigned long>(-e));
}

// Core simultaneous iteration on ascending coefficients already in working
// precision; the last entry must be nonzero.
RootFindResult aberth_extended_core(const std::vector<MC>& coeff,
                                    mp_bitcnt_t prec) {
  const std::size_t n = coeff.size() - 1;
  std::vector<MC> monic(n + 1);
  for (std::size_t k = 0; k <= n; ++k) monic[k] = coeff[k] / coeff[n];

  // Same ring of initial guesses as the double pass, but laid out in log2
  // space so monic coefficients far outside double range still place it.
  double bound_log2 = -1e6;
  for (std::size_t k = 0; k < n; ++k)
    bound_log2 = std::max(bound_log2, log2_abs(monic[k]));
  const double radius_log2 = bound_log2 <= 0.0 ? 1.0 : bound_log2 + 1.0;
  double inner_log2 = sgn(monic[0].re) != 0 || sgn(monic[0].im) != 0
                          ? log2_abs(monic[0]) / double(n)
                          : -10.0;
  inner_log2 = std::min(std::max(inner_log2, -10.0), radius_log2);

  std::vector<MC> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = double(j) / double(n);
    const double r_log2 =
        inner_log2 + (radius_log2 - inner_log2) * (0.3 + 0.4 * t);
    const long e = std::lround(std::floor(r_log2));
    const double mag = std::exp2(r_log2 - double(e));
    const double ang = 2.0 * std::numbers::pi * t + 0.7123;
    z[j] = {mpf_class(mag * std::cos(ang), prec),
            mpf_class(mag * std::sin(ang), prec)};
    scale_2exp(z[j].re, e);
    scale_2exp(z[j].im, e);
  }

  // Aberth with per-root freezing. The step threshold sits far below any
  // double need but well above the working epsilon, so quadratic tails
  // cross it in one or two sweeps.
  mpf_class stop(1.0, prec);
  scale_2exp(stop, -long(prec / 2) - 10);
  const mpf_class one(1.0, prec);
  std::vector<char> done(n, 0);
  for (int it = 0; it < 600; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      MC pv{mpf_class(0.0, prec), mpf_class(0.0, prec)};
      MC dpv{mpf_class(0.0, prec), mpf_class(0.0, prec)};
      for (std::size_t k = n + 1; k-- > 0;) {
        dpv = dpv * z[i] + pv;
        pv = pv * z[i] + monic[k];
      }
      if (is_zero(pv)) {
        done[i] = 1;
        continue;
      }
      if (sgn(abs2(dpv)) == 0) {
        z[i].re += mpf_class(1e-3, prec);
        z[i].im += mpf_class(1e-3, prec);
        all = false;
        continue;
      }
      const MC nr = pv / dpv;
      MC s{mpf_class(0.0, prec), mpf_class(0.0, prec)};
      bool collided = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const MC diff = z[i] - z[j];
        if (is_zero(diff)) {
          collided = true;
          break;
        }
        s = s + MC{one, mpf_class(0.0, prec)} / diff;
      }
      if (collided) {
        z[i].re += mpf_class(1e-3, prec);
        all = false;
        continue;
      }
      const MC denom = MC{one, mpf_class(0.0, prec)} - nr * s;
      const MC w = sgn(abs2(denom)) == 0 ? nr : nr / denom;
      z[i] = z[i] - w;
      const mpf_class step2 = abs2(w);
      const mpf_class gate(stop * (one + sqrt(abs2(z[i]))));
      if (step2 <= gate * gate)
        done[i] = 1;
      else
        all = false;
    }
    if (all) break;
  }

  // Merge only double-rounding collisions; the callers pass square-free
  // input, so near-coincident limits mean a true multiple root and land
  // within working precision of each other anyway.
  struct Cluster {
    MC rep;
    int count;
  };
  std::vector<Cluster> clusters;
  for (const MC& zi : z) {
    bool placed = false;
    for (Cluster& cl : clusters) {
      const mpf_class lim(mpf_class(1e-13, prec) * (one + sqrt(abs2(cl.rep))));
      if (sqrt(abs2(zi - cl.rep)) <= lim) {
        cl.count += 1;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({zi, 1});
  }

  RootFindResult res;
  res.degree_used = int(n);
  res.precision_bits = int(prec);
  for (const Cluster& cl : clusters)
    res.roots.push_back(
        {Cx(cl.rep.re.get_d(), cl.rep.im.get_d()), cl.count});
  std::sort(res.roots.begin(), res.roots.end(),
            [](const ComplexRoot& a, const ComplexRoot& b) {
              if (a.value.real() != b.value.real())
                return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });

  // Rebuild the monic product in working precision against the exact monic
  // coefficients; mpf exponents are wide enough that no rescaling is needed.
  std::vector<MC> prod{MC{one, mpf_class(0.0, prec)}};
  for (const MC& zi : z) {
    std::vector<MC> next(prod.size() + 1,
                         MC{mpf_class(0.0, prec), mpf_class(0.0, prec)});
    for (std::size_t k = 0; k < prod.size(); ++k) {
      next[k + 1] = next[k + 1] + prod[k];
      next[k] = next[k] - prod[k] * zi;
    }
    prod = std::move(next);
  }
  mpf_class err(0.0, prec), mag(1.0, prec);
  for (std::size_t k = 0; k <= n; ++k) {
    const mpf_class d = sqrt(abs2(prod[k] - monic[k]));
    if (d > err) err = d;
    const mpf_class m = sqrt(abs2(monic[k]));
    if (m > mag) mag = m;
  }
  res.reconstruction_error = mpf_class(err / mag).get_d();
  return res;
}

RootFindResult aberth_extended(const std::vector<Rat>& coeff,
                               mp_bitcnt_t prec) {
  std::vector<MC> c(coeff.size());
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    const mpf_class num(coeff[k].get_num(), prec);
    const mpf_class den(coeff[k].get_den(), prec);
    c[k] = {mpf_class(num / den), mpf_class(0.0, prec)};
  }
  return aberth_extended_core(c, prec);
}

}  // namespace

RootFindResult univariate_roots_exact(const RatMPoly& p,
                                      const std::string& var,
                                      double cluster_tol) {
  for (const auto& v : p.vars())
    if (v != var)
      throw std::invalid_argument("polynomial is not univariate in " + var);
  const int degree = p.degree_in(var);
  if (degree < 1) throw degree_error("root finding requires degree >= 1");

  RootFindResult best;
  bool have = false;
  try {
    const CPoly dp = CPoly::from_exact(p, var);
    RootFindResult rr;
    try {
      rr = univariate_roots(dp, cluster_tol);
    } catch (const leading_coeff_error&) {
      rr = univariate_roots(dp.dropped_tiny_leading(1e-12), cluster_tol);
    }
    int total = 0;
    for (const ComplexRoot& r : rr.roots) total += r.multiplicity;
    if (rr.reconstruction_error <= 1e-9 && total == degree) return rr;
    best = rr;
    have = true;
  } catch (const std::exception&) {
    // The double image can lose its degree entirely; the extended pass
    // below works from the exact coefficients and does not care.
  }

  std::vector<RatMPoly> cs = p.coeffs_wrt(var);
  std::vector<Rat> coeff(cs.size());
  for (std::size_t k = 0; k < cs.size(); ++k)
    coeff[k] = cs[k].constant_value();

  for (mp_bitcnt_t prec : {mp_bitcnt_t(256), mp_bitcnt_t(512)}) {
    RootFindResult rr = aberth_extended(coeff, prec);
    if (!have || rr.reconstruction_error < best.reconstruction_error) {
      best = rr;
      have = true;
    }
    if (rr.reconstruction_error <= 1e-9) break;
  }
  return best;
}

namespace {

struct SectionCoeffs {
  std::vector<MC> coeff;
  // Per coefficient, the sum of absolute term magnitudes that produced it;
  // the yardstick for deciding whether a computed value is roundoff or data.
  std::vector<mpf_class> bound;
};

// The section's coefficients are the exact coefficient polynomials in
// `fixed`, evaluated by Horner at the rounded sweep value. Everything up
// to that one rounding stays at working precision.
SectionCoeffs section_coeffs_mpf(const RatMPoly& p, const std::string& kept,
                                 const std::string& fixed, Cx value,
                                 mp_bitcnt_t prec) {
  for (const auto& v : p.vars())
    if (v != kept && v != fixed)
      throw std::invalid_argument("unexpected variable " + v);
  const MC zv{mpf_class(value.real(), prec), mpf_class(value.imag(), prec)};
  const mpf_class za(sqrt(abs2(zv)));
  std::vector<RatMPoly> cs = p.coeffs_wrt(kept);
  SectionCoeffs sc;
  sc.coeff.resize(cs.size());
  sc.bound.resize(cs.size());
  for (std::size_t k = 0; k < cs.size(); ++k) {
    std::vector<RatMPoly> inner = cs[k].coeffs_wrt(fixed);
    MC acc{mpf_class(0.0, prec), mpf_class(0.0, prec)};
    mpf_class mag(0.0, prec);
    for (std::size_t j = inner.size(); j-- > 0;) {
      const Rat& r = inner[j].constant_value();
      const mpf_class num(r.get_num(), prec);
      const mpf_class den(r.get_den(), prec);
      const mpf_class q(num / den);
      acc = acc * zv + MC{q, mpf_class(0.0, prec)};
      mag = mpf_class(mag * za + abs(q));
    }
    sc.coeff[k] = acc;
    sc.bound[k] = mag;
  }
  return sc;
}

// Drop leading coefficients whose computed value sits below the roundoff
// of their own evaluation; those are noise, not data. Anything resolvably
// nonzero stays, however small against the section's largest coefficient:
// a dilation can push the genuine leading coefficients many orders below
// the rest while they still govern the section's outer roots, so a
// magnitude-relative trim would amputate real roots. A tiny kept leading
// coefficient merely parks spare roots far out, where the downstream
// recovery discards them.
void trim_noise_leading(SectionCoeffs& sc, mp_bitcnt_t prec) {
  while (!sc.coeff.empty()) {
    const std::size_t k = sc.coeff.size() - 1;
    const mpf_class mag = sqrt(abs2(sc.coeff[k]));
    mpf_class noise(sc.bound[k], prec);
    mpf_div_2exp(noise.get_mpf_t(), noise.get_mpf_t(), prec - 30);
    if (mag > noise) break;
    sc.coeff.pop_back();
    sc.bound.pop_back();
  }
}

}  // namespace

SectionImage specialize_extended(const RatMPoly& p, const std::string& kept,
                                 const std::string& fixed, Cx value) {
  const mp_bitcnt_t prec = 256;
  SectionCoeffs sc = section_coeffs_mpf(p, kept, fixed, value, prec);
  trim_noise_leading(sc, prec);
  mpf_class top(0.0, prec);
  for (const MC& c : sc.coeff) {
    const mpf_class m = sqrt(abs2(c));
    if (m > top) top = m;
  }
  SectionImage out;
  if (sc.coeff.empty() || sgn(top) == 0) return out;
  const Rat scale = p.max_abs_coeff();
  const mpf_class num(scale.get_num(), prec);
  const mpf_class den(scale.get_den(), prec);
  out.max_rel = mpf_class(top * den / num).get_d();
  out.coeffs.resize(sc.coeff.size());
  for (std::size_t k = 0; k < sc.coeff.size(); ++k)
    out.coeffs[k] = Cx(mpf_class(sc.coeff[k].re / top).get_d(),
                       mpf_class(sc.coeff[k].im / top).get_d());
  return out;
}

RootFindResult section_roots_exact(const RatMPoly& p, const std::string& kept,
                                   const std::string& fixed, Cx value) {
  const mp_bitcnt_t prec = 256;
  SectionCoeffs sc = section_coeffs_mpf(p, kept, fixed, value, prec);
  trim_noise_leading(sc, prec);
  if (sc.coeff.empty()) throw degree_error("section vanishes");
  if (sc.coeff.size() <= 1) throw degree_error("section keeps no degree");
  return aberth_extended_core(sc.coeff, prec);
}

RootFindResult univariate_roots(const CPoly& p, double cluster_tol) {
  RootFindResult res;
  const auto& c = p.coeffs();
  if (c.size() <= 1) throw degree_error("root finding requires degree >= 1");

  double maxabs = 0.0;
  for (const auto& v : c) maxabs = std::max(maxabs, cabs(v));
  const std::size_t n = c.size() - 1;
  if (cabs(c[n]) <= 1e-14 * maxabs)
    throw leading_coeff_error("leading coefficient too small for reliable roots");
  res.degree_used = int(n);

  std::vector<Cx> monic(n + 1);
  for (std::size_t k = 0; k <= n; ++k) monic[k] = c[k] / c[n];
  CPoly mp(monic);

  // Initial guesses on a circle sized by the coefficient bounds, with an
  // irrational-looking phase so symmetric polynomials do not trap the
  // iteration on an invariant set.
  double bound = 0.0;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, cabs(monic[k]));
  double radius = 1.0 + bound;
  double inner = cabs(monic[0]) > 0.0
                     ? std::pow(cabs(monic[0]), 1.0 / double(n))
                     : 0.5;
  inner = std::min(std::max(inner, 1e-3), radius);
  std::vector<Cx> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    double t = double(j) / double(n);
    double r = inner * std::pow(radius / inner, 0.3 + 0.4 * t);
    double ang = 2.0 * std::numbers::pi * t + 0.7123;
    z[j] = Cx(r * std::cos(ang), r * std::sin(ang));
  }

  // Aberth simultaneous iteration.
  for (int it = 0; it < 400; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Cx pv, dpv, ddpv;
      mp.eval_all(z[i], pv, dpv, ddpv);
      if (pv == Cx(0.0, 0.0)) continue;
      if (cabs(dpv) == 0.0) {
        z[i] += Cx(1e-6 * (1.0 + cabs(z[i])), 1e-6);
        worst = 1.0;
        continue;
      }
      Cx nr = pv / dpv;
      Cx s(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += Cx(1.0, 0.0) / (z[i] - z[j]);
      Cx denom = Cx(1.0, 0.0) - nr * s;
      Cx w = cabs(denom) > 1e-30 ? nr / denom : nr;
      z[i] -= w;
      worst = std::max(worst, cabs(w) / (1.0 + cabs(z[i])));
    }
    if (worst < 5e-15) break;
  }

  for (auto& zi : z) zi = polish_root(mp, zi, false);

  // Greedy clustering into multiple roots.
  struct Cluster {
    Cx sum;
    int count;
  };
  std::vector<Cluster> clusters;
  for (const auto& zi : z) {
    bool placed = false;
    for (auto& cl : clusters) {
      Cx mean = cl.sum / double(cl.count);
      if (cabs(zi - mean) <= cluster_tol * (1.0 + cabs(mean))) {
        cl.sum += zi;
        cl.count += 1;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({zi, 1});
  }

  for (const auto& cl : clusters) {
    Cx mean = cl.sum / double(cl.count);
    if (cl.count > 1) mean = polish_root(mp, mean, true);
    res.roots.push_back({mean, cl.count});
  }
  std::sort(res.roots.begin(), res.roots.end(),
            [](const ComplexRoot& a, const ComplexRoot& b) {
              if (a.value.real() != b.value.real())
                return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });

  res.reconstruction_error = reconstruction_check(res.roots, monic);
  return res;
}

}  // namespace quadanchor
