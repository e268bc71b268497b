#include "quadanchor/elim.hpp"

#include <algorithm>
#include <stdexcept>

#include "quadanchor/errors.hpp"

namespace quadanchor {

namespace {

// Fraction-free (Bareiss) elimination; divisions are exact by construction.
mpz_class bareiss(std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  int sign = 1;
  mpz_class prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return mpz_class(0);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : mpz_class(-a[n - 1][n - 1]);
}

}  // namespace

mpz_class integer_det(std::vector<std::vector<mpz_class>> m) {
  if (m.empty()) return mpz_class(1);
  for (const auto& row : m)
    if (row.size() != m.size())
      throw std::invalid_argument("determinant of non-square matrix");
  if (m.size() == 1) return m[0][0];
  return bareiss(m);
}

Rat rational_det(const std::vector<std::vector<Rat>>& m) {
  if (m.empty()) return Rat(1);
  const std::size_t n = m.size();
  std::vector<std::vector<mpz_class>> im(n, std::vector<mpz_class>(n));
  mpz_class denom(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n)
      throw std::invalid_argument("determinant of non-square matrix");
    mpz_class row_lcm(1);
    for (const auto& v : m[i]) row_lcm = int_lcm(row_lcm, v.get_den());
    for (std::size_t j = 0; j < n; ++j) {
      Rat scaled = m[i][j] * Rat(row_lcm);
      im[i][j] = scaled.get_num();  // denominator is 1 after scaling
    }
    denom *= row_lcm;
  }
  Rat r(integer_det(std::move(im)), denom);
  r.canonicalize();
  return r;
}

RatMPoly poly_det(std::vector<std::vector<RatMPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return RatMPoly(1L);
  for (const auto& row : m)
    if (row.size() != n)
      throw std::invalid_argument("determinant of non-square matrix");
  if (n > 12)
    throw std::invalid_argument("polynomial determinant limited to small matrices");

  int sign = 1;
  RatMPoly prev(1L);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return RatMPoly();
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        RatMPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = num.divided_exact(prev);
        if (!q)
          throw std::logic_error("inexact division in fraction-free elimination");
        m[i][j] = std::move(*q);
      }
      m[i][k] = RatMPoly();
    }
    prev = m[k][k];
  }
  RatMPoly d = m[n - 1][n - 1];
  return sign > 0 ? d : -d;
}

namespace {

std::vector<std::string> other_vars(const RatMPoly& p, const RatMPoly& q,
                                    const std::string& var) {
  std::vector<std::string> out;
  for (const auto& v : p.vars())
    if (v != var) out.push_back(v);
  for (const auto& v : q.vars())
    if (v != var && std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

// Sylvester matrix rows for p of degree m and q of degree n in the
// eliminated variable: n shifted copies of p's coefficients (descending),
// then m shifted copies of q's.
template <typename Cell, typename GetP, typename GetQ>
std::vector<std::vector<Cell>> sylvester(int m, int n, const GetP& pc,
                                         const GetQ& qc, const Cell& zero) {
  const int size = m + n;
  std::vector<std::vector<Cell>> s(std::size_t(size),
                                   std::vector<Cell>(std::size_t(size), zero));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[std::size_t(r)][std::size_t(r + k)] = pc(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[std::size_t(n + r)][std::size_t(r + k)] = qc(n - k);
  return s;
}

// Exact Newton interpolation through (xs[i], ys[i]).
RatMPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys,
                     const std::string& var) {
  const std::size_t n = xs.size();
  std::vector<Rat> c = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n; i-- > j;)
      c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
  RatMPoly t = RatMPoly::var(var);
  RatMPoly acc(c[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;)
    acc = acc * (t - RatMPoly(xs[i])) + RatMPoly(c[i]);
  return acc;
}

mpz_class coeff_denominator_lcm(const RatMPoly& p) {
  mpz_class l(1);
  p.for_each_term([&l](const std::vector<int>&, const Rat& c) {
    l = int_lcm(l, c.get_den());
  });
  return l;
}

}  // namespace

RatMPoly resultant(const RatMPoly& p, const RatMPoly& q,
                   const std::string& var) {
  const int m = p.degree_in(var);
  const int n = q.degree_in(var);
  if (m < 1 || n < 1)
    throw degree_error("resultant requires positive degree in " + var);

  const std::vector<std::string> others = other_vars(p, q, var);

  if (others.empty()) {
    std::vector<RatMPoly> pc = p.coeffs_wrt(var), qc = q.coeffs_wrt(var);
    auto getp = [&pc](int k) { return pc[std::size_t(k)].constant_value(); };
    auto getq = [&qc](int k) { return qc[std::size_t(k)].constant_value(); };
    auto s = sylvester<Rat>(m, n, getp, getq, Rat(0));
    return RatMPoly(rational_det(s));
  }

  if (others.size() == 1) {
    const std::string& t = others[0];

    // Work with denominator-cleared copies so specialized Sylvester
    // determinants stay integral; undo the scaling at the end.
    mpz_class lp = coeff_denominator_lcm(p), lq = coeff_denominator_lcm(q);
    RatMPoly P = p.scaled(Rat(lp)), Q = q.scaled(Rat(lq));

    const int bound = std::max(P.degree_in(t), 0) * n +
                      std::max(Q.degree_in(t), 0) * m;
    const std::size_t points = std::size_t(bound) + 1;

    std::vector<RatMPoly> pc = P.coeffs_wrt(var), qc = Q.coeffs_wrt(var);
    const RatMPoly& plc = pc.back();
    const RatMPoly& qlc = qc.back();

    std::vector<Rat> xs, ys;
    xs.reserve(points);
    ys.reserve(points);
    long v = 0;
    while (xs.size() < points) {
      Rat x(v);
      // Alternate 0, 1, -1, 2, -2, ...
      v = v > 0 ? -v : -v + 1;
      std::map<std::string, Rat> at{{t, x}};
      if (plc.eval_rat(at) == 0 || qlc.eval_rat(at) == 0) continue;

      auto getp = [&pc, &at](int k) {
        return pc[std::size_t(k)].eval_rat(at).get_num();
      };
      auto getq = [&qc, &at](int k) {
        return qc[std::size_t(k)].eval_rat(at).get_num();
      };
      auto s = sylvester<mpz_class>(m, n, getp, getq, mpz_class(0));
      xs.push_back(x);
      ys.emplace_back(integer_det(std::move(s)));
    }

    RatMPoly res = interpolate(xs, ys, t);
    // res is Res(P,Q) = lp^n * lq^m * Res(p,q); undo the clearing.
    Rat factor(1);
    for (int i = 0; i < n; ++i) factor *= Rat(lp);
    for (int i = 0; i < m; ++i) factor *= Rat(lq);
    return res.scaled(Rat(1) / factor);
  }

  std::vector<RatMPoly> pc = p.coeffs_wrt(var), qc = q.coeffs_wrt(var);
  auto getp = [&pc](int k) { return pc[std::size_t(k)]; };
  auto getq = [&qc](int k) { return qc[std::size_t(k)]; };
  auto s = sylvester<RatMPoly>(m, n, getp, getq, RatMPoly());
  return poly_det(std::move(s));
}

namespace {

// Pseudo-remainder of a by b in x (b nonzero, positive degree in x).
RatMPoly prem(RatMPoly a, const RatMPoly& b, const std::string& x) {
  const int db = b.degree_in(x);
  const RatMPoly lcb = b.leading_coeff_wrt(x);
  const RatMPoly xv = RatMPoly::var(x);
  while (!a.is_zero() && a.degree_in(x) >= db) {
    const int da = a.degree_in(x);
    RatMPoly lca = a.leading_coeff_wrt(x);
    a = a * lcb - lca * xv.pow(unsigned(da - db)) * b;
  }
  return a;
}

RatMPoly gcd_univar(const RatMPoly& p, const RatMPoly& q);

// Content of p viewed in (coefficient ring)[x]: gcd of the coefficients,
// which live in at most one other variable here.
RatMPoly content_wrt(const RatMPoly& p, const std::string& x) {
  RatMPoly g;
  for (const RatMPoly& c : p.coeffs_wrt(x)) {
    if (c.is_zero()) continue;
    g = gcd_univar(g, c);
    if (g.is_constant()) return RatMPoly(1L);
  }
  return g.is_zero() ? RatMPoly(1L) : g;
}

// Primitive remainder sequence over (coefficient ring)[x].
RatMPoly prs_gcd(RatMPoly a, RatMPoly b, const std::string& x) {
  if (a.degree_in(x) < b.degree_in(x)) std::swap(a, b);
  while (true) {
    if (b.is_zero()) return a;
    // Nonzero coefficient-ring element: the x-primitive gcd is trivial,
    // shared content is handled by the caller.
    if (b.degree_in(x) == 0) return RatMPoly(1L);
    RatMPoly r = prem(a, b, x);
    if (!r.is_zero()) {
      auto div = r.divided_exact(content_wrt(r, x));
      r = div ? std::move(*div) : r;
    }
    a = std::move(b);
    b = std::move(r);
  }
}

// Ascending integer coefficients of a primitive univariate polynomial.
std::vector<mpz_class> dense_coeffs(const RatMPoly& p, const std::string& x) {
  std::vector<RatMPoly> cs = p.coeffs_wrt(x);
  std::vector<mpz_class> out(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Rat v = cs[i].eval_rat({});
    out[i] = v.get_num();  // primitive input: denominators are 1
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

void trim_mod(std::vector<mpz_class>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b over F_p, both ascending with nonzero leading terms.
std::vector<mpz_class> polymod_p(std::vector<mpz_class> a,
                                 const std::vector<mpz_class>& b,
                                 const mpz_class& p) {
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
  while (a.size() >= b.size()) {
    mpz_class f = a.back() * inv % p;
    const std::size_t off = a.size() - b.size();
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      a[off + j] = (a[off + j] - f * b[j]) % p;
      if (a[off + j] < 0) a[off + j] += p;
    }
    a.pop_back();
    trim_mod(a);
  }
  return a;
}

// Monic gcd of the reductions of A and B over F_p; empty when p kills a
// leading coefficient path entirely.
std::vector<mpz_class> gcd_mod_p(const std::vector<mpz_class>& A,
                                 const std::vector<mpz_class>& B,
                                 const mpz_class& p) {
  auto red = [&](const std::vector<mpz_class>& v) {
    std::vector<mpz_class> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[i] = v[i] % p;
      if (r[i] < 0) r[i] += p;
    }
    trim_mod(r);
    return r;
  };
  std::vector<mpz_class> a = red(A), b = red(B);
  if (a.empty() || b.empty()) return {};
  while (!b.empty()) {
    std::vector<mpz_class> r = polymod_p(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
  for (mpz_class& c : a) c = c * inv % p;
  return a;
}

// Univariate integer gcd by CRT over a deterministic stream of word-size
// primes; each stabilized candidate is verified by exact division, so an
// unlucky prime can delay but never corrupt the result. The primitive PRS
// grows catastrophic coefficients on the high-degree eliminants this
// library produces, hence the modular route.
RatMPoly modular_gcd_univar(const RatMPoly& pp, const RatMPoly& qq,
                            const std::string& x) {
  const std::vector<mpz_class> A = dense_coeffs(pp, x);
  const std::vector<mpz_class> B = dense_coeffs(qq, x);
  mpz_class gl;
  mpz_gcd(gl.get_mpz_t(), A.back().get_mpz_t(), B.back().get_mpz_t());

  mpz_class p(1);
  p <<= 61;
  std::vector<mpz_class> acc;
  mpz_class mod(0);
  int best_deg = -1;
  bool stable = false;
  for (int iter = 0; iter < 4096; ++iter) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (A.back() % p == 0 || B.back() % p == 0) continue;
    std::vector<mpz_class> g = gcd_mod_p(A, B, p);
    if (g.empty()) continue;
    const int dg = int(g.size()) - 1;
    if (dg == 0) return RatMPoly(1L);
    if (best_deg >= 0 && dg > best_deg) continue;  // unlucky prime
    const mpz_class glp = ((gl % p) + p) % p;
    for (mpz_class& c : g) c = c * glp % p;
    if (best_deg < 0 || dg < best_deg) {
      best_deg = dg;
      acc.assign(g.begin(), g.end());
      for (mpz_class& c : acc)
        if (c * 2 > p) c -= p;  // symmetric lift
      mod = p;
      stable = false;
      continue;
    }
    // CRT step against the accumulated modulus.
    mpz_class minv;
    mpz_invert(minv.get_mpz_t(), mpz_class(mod % p).get_mpz_t(),
               p.get_mpz_t());
    bool changed = false;
    const mpz_class next = mod * p;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      mpz_class t = ((g[i] - acc[i]) % p + p) % p * minv % p;
      mpz_class v = acc[i] + mod * t;
      if (v * 2 > next) v -= next;
      if (v != acc[i]) changed = true;
      acc[i] = v;
    }
    mod = next;
    if (changed) {
      stable = false;
      continue;
    }
    if (!stable) {
      stable = true;
      RatMPoly cand;
      const RatMPoly xv = RatMPoly::var(x);
      for (std::size_t i = 0; i < acc.size(); ++i)
        if (acc[i] != 0) cand += Rat(acc[i]) * xv.pow(unsigned(i));
      cand = cand.primitive();
      if (pp.divided_exact(cand) && qq.divided_exact(cand)) return cand;
      stable = false;
    }
  }
  throw std::logic_error("modular gcd did not stabilize");
}

RatMPoly gcd_univar(const RatMPoly& p, const RatMPoly& q) {
  if (p.is_zero()) return q.primitive();
  if (q.is_zero()) return p.primitive();
  if (p.is_constant() || q.is_constant()) return RatMPoly(1L);
  if (p.vars() != q.vars() || p.vars().size() != 1)
    throw std::invalid_argument("gcd_univar expects matching single variables");
  const std::string x = p.vars()[0];
  RatMPoly a = p.primitive(), b = q.primitive();
  if (a.degree_in(x) + b.degree_in(x) >= 12)
    return modular_gcd_univar(a, b, x);
  return prs_gcd(a, b, x).primitive();
}

// Dense x-coefficients of the image of a under y -> t over F_q; empty when
// a denominator or the whole image vanishes mod q.
std::vector<mpz_class> specialize_mod_p(const RatMPoly& a, const std::string& x,
                                        const std::string& y,
                                        const mpz_class& t,
                                        const mpz_class& q) {
  int ix = -1, iy = -1;
  for (std::size_t i = 0; i < a.vars().size(); ++i) {
    if (a.vars()[i] == x) ix = int(i);
    if (a.vars()[i] == y) iy = int(i);
  }
  std::vector<mpz_class> tp{1};
  const int dy = iy >= 0 ? a.degree_in(y) : 0;
  for (int i = 1; i <= dy; ++i) tp.push_back(tp.back() * t % q);

  std::vector<mpz_class> out(std::size_t(std::max(0, a.degree_in(x)) + 1), 0);
  bool bad = false;
  a.for_each_term([&](const std::vector<int>& e, const Rat& c) {
    if (bad) return;
    mpz_class den = c.get_den() % q;
    if (den == 0) { bad = true; return; }
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
    mpz_class v = (c.get_num() % q + q) % q * inv % q;
    if (iy >= 0) v = v * tp[std::size_t(e[std::size_t(iy)])] % q;
    const std::size_t ex = ix >= 0 ? std::size_t(e[std::size_t(ix)]) : 0;
    out[ex] = (out[ex] + v) % q;
  });
  if (bad) return {};
  trim_mod(out);
  return out;
}

// Proof that gcd(a, b) has degree zero in x: a specialization of y that
// keeps both leading x-coefficients alive can only lower the x-degree of a
// divisor's image, so a constant specialized gcd pins the true x-degree at
// zero. Returns false when no attempted specialization yields the proof.
bool probe_gcd_xfree(const RatMPoly& a, const RatMPoly& b,
                     const std::string& x, const std::string& y) {
  mpz_class p(1);
  p <<= 61;
  for (int round = 0; round < 4; ++round) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    for (int j = 0; j < 6; ++j) {
      const mpz_class t(2 + 5 * round + j);
      const std::vector<mpz_class> A = specialize_mod_p(a, x, y, t, p);
      const std::vector<mpz_class> B = specialize_mod_p(b, x, y, t, p);
      if (A.empty() || B.empty()) continue;
      if (int(A.size()) - 1 != std::max(0, a.degree_in(x))) continue;
      if (int(B.size()) - 1 != std::max(0, b.degree_in(x))) continue;
      const std::vector<mpz_class> g = gcd_mod_p(A, B, p);
      if (g.size() == 1) return true;
    }
  }
  return false;
}

}  // namespace

RatMPoly mp_gcd(const RatMPoly& p, const RatMPoly& q) {
  if (p.is_zero() && q.is_zero()) return RatMPoly();
  if (p.is_zero()) return q.primitive();
  if (q.is_zero()) return p.primitive();
  if (p.is_constant() || q.is_constant()) return RatMPoly(1L);

  std::vector<std::string> all = p.vars();
  for (const auto& v : q.vars())
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  std::sort(all.begin(), all.end());
  if (all.size() > 2)
    throw std::invalid_argument("gcd supports at most two variables");

  RatMPoly g;
  if (all.size() == 1) {
    g = gcd_univar(p, q);
  } else if (probe_gcd_xfree(p, q, all[0], all[1]) &&
             probe_gcd_xfree(p, q, all[1], all[0])) {
    // Coprimality is the common case and the primitive sequence below is
    // brutally expensive on it, so prove it cheaply when possible.
    g = RatMPoly(1L);
  } else {
    const std::string x = all[0];
    RatMPoly cp = content_wrt(p, x), cq = content_wrt(q, x);
    auto ppp = p.divided_exact(cp), ppq = q.divided_exact(cq);
    if (!ppp || !ppq) throw std::logic_error("content division failed");
    RatMPoly cg = (cp.is_constant() || cq.is_constant())
                      ? RatMPoly(1L)
                      : gcd_univar(cp, cq);
    RatMPoly pg = prs_gcd(*ppp, *ppq, x).primitive();
    g = (cg * pg).primitive();
  }

  if (!p.divided_exact(g) || !q.divided_exact(g))
    throw std::logic_error("computed gcd fails to divide an input");
  return g;
}

}  // namespace quadanchor
