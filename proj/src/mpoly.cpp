#include "quadanchor/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace quadanchor {

namespace {

RatMPoly::Expo zero_expo() {
  RatMPoly::Expo e{};
  e.fill(0);
  return e;
}

int total_of(const RatMPoly::Expo& e) {
  int t = 0;
  for (int16_t v : e) t += v;
  return t;
}

// Graded lexicographic comparison (total degree first, then lex on the
// exponent vector). Used as the admissible order for exact division.
bool grlex_less(const RatMPoly::Expo& a, const RatMPoly::Expo& b) {
  int ta = total_of(a), tb = total_of(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

}  // namespace

RatMPoly::RatMPoly(const Rat& c) {
  if (c != 0) terms_.emplace(zero_expo(), c);
}

RatMPoly::RatMPoly(long c) : RatMPoly(Rat(c)) {}

RatMPoly RatMPoly::var(const std::string& name) {
  RatMPoly p;
  p.vars_.push_back(name);
  Expo e = zero_expo();
  e[0] = 1;
  p.terms_.emplace(e, Rat(1));
  return p;
}

RatMPoly RatMPoly::with_vars(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.size() > kMaxVars)
    throw std::length_error("polynomial variable capacity exceeded");
  RatMPoly p;
  p.vars_ = std::move(names);
  return p;
}

Rat RatMPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant())
    throw std::logic_error("constant_value on non-constant polynomial");
  return terms_.begin()->second;
}

int RatMPoly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_of(e));
  return d;
}

int RatMPoly::degree_in(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return terms_.empty() ? -1 : 0;
  std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, int(e[idx]));
  return d;
}

void RatMPoly::add_term(const Expo& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void RatMPoly::canonicalize_vars() {
  if (vars_.empty()) return;
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (e[i] != 0) used[i] = true;
  bool all = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
  if (all) return;

  std::vector<std::string> nv;
  std::vector<int> remap(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) {
      remap[i] = int(nv.size());
      nv.push_back(vars_[i]);
    }
  std::map<Expo, Rat> nt;
  for (const auto& [e, c] : terms_) {
    Expo ne = zero_expo();
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (e[i] != 0) ne[remap[i]] = e[i];
    nt.emplace(ne, c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

void RatMPoly::align(RatMPoly& a, RatMPoly& b) {
  if (a.vars_ == b.vars_) return;
  std::vector<std::string> merged;
  std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(),
                 b.vars_.end(), std::back_inserter(merged));
  if (merged.size() > kMaxVars)
    throw std::length_error("polynomial variable capacity exceeded");

  auto remap = [&merged](RatMPoly& p) {
    std::vector<int> pos(p.vars_.size());
    for (std::size_t i = 0; i < p.vars_.size(); ++i)
      pos[i] = int(std::lower_bound(merged.begin(), merged.end(),
                                    p.vars_[i]) -
                   merged.begin());
    std::map<Expo, Rat> nt;
    for (const auto& [e, c] : p.terms_) {
      Expo ne = zero_expo();
      for (std::size_t i = 0; i < p.vars_.size(); ++i)
        if (e[i] != 0) ne[pos[i]] = e[i];
      nt.emplace(ne, c);
    }
    p.vars_ = merged;
    p.terms_ = std::move(nt);
  };
  remap(a);
  remap(b);
}

RatMPoly RatMPoly::operator-() const {
  RatMPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

RatMPoly RatMPoly::operator+(const RatMPoly& o) const {
  RatMPoly a = *this, b = o;
  align(a, b);
  for (const auto& [e, c] : b.terms_) a.add_term(e, c);
  a.canonicalize_vars();
  return a;
}

RatMPoly RatMPoly::operator-(const RatMPoly& o) const { return *this + (-o); }

RatMPoly RatMPoly::operator*(const RatMPoly& o) const {
  RatMPoly a = *this, b = o;
  align(a, b);
  RatMPoly r;
  r.vars_ = a.vars_;
  Rat c;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Expo e;
      for (int i = 0; i < kMaxVars; ++i)
        e[i] = static_cast<int16_t>(ea[i] + eb[i]);
      c = ca * cb;
      r.add_term(e, c);
    }
  r.canonicalize_vars();
  return r;
}

bool RatMPoly::operator==(const RatMPoly& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

RatMPoly RatMPoly::scaled(const Rat& c) const {
  if (c == 0) return RatMPoly();
  RatMPoly r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

RatMPoly operator*(const Rat& c, const RatMPoly& p) { return p.scaled(c); }

RatMPoly RatMPoly::pow(unsigned e) const {
  RatMPoly r(Rat(1));
  RatMPoly base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

RatMPoly RatMPoly::derivative(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return RatMPoly();
  std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
  RatMPoly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Expo ne = e;
    ne[idx] = static_cast<int16_t>(ne[idx] - 1);
    r.add_term(ne, c * Rat(long(e[idx])));
  }
  r.canonicalize_vars();
  return r;
}

RatMPoly RatMPoly::substituted(const std::string& name,
                               const RatMPoly& value) const {
  std::vector<RatMPoly> cs = coeffs_wrt(name);
  // Horner evaluation in the substituted value.
  RatMPoly r = cs.back();
  for (std::size_t k = cs.size() - 1; k-- > 0;) r = r * value + cs[k];
  return r;
}

std::vector<RatMPoly> RatMPoly::coeffs_wrt(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return {*this};
  std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
  int d = degree_in(name);
  std::vector<RatMPoly> out(std::size_t(std::max(d, 0)) + 1);
  for (auto& p : out) p.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    Expo ne = e;
    int k = ne[idx];
    ne[idx] = 0;
    out[std::size_t(k)].add_term(ne, c);
  }
  for (auto& p : out) p.canonicalize_vars();
  return out;
}

RatMPoly RatMPoly::coeff_of(const std::string& name, int power) const {
  std::vector<RatMPoly> cs = coeffs_wrt(name);
  if (power < 0 || std::size_t(power) >= cs.size()) return RatMPoly();
  return cs[std::size_t(power)];
}

RatMPoly RatMPoly::leading_coeff_wrt(const std::string& name) const {
  std::vector<RatMPoly> cs = coeffs_wrt(name);
  return cs.back();
}

std::complex<double> RatMPoly::eval(
    const std::map<std::string, std::complex<double>>& point) const {
  std::vector<std::complex<double>> vals(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = point.find(vars_[i]);
    if (it == point.end())
      throw std::invalid_argument("missing value for variable " + vars_[i]);
    vals[i] = it->second;
  }
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    std::complex<double> t(c.get_d(), 0.0);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= vals[i];
    acc += t;
  }
  return acc;
}

Rat RatMPoly::eval_rat(const std::map<std::string, Rat>& point) const {
  std::vector<Rat> vals(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = point.find(vars_[i]);
    if (it == point.end())
      throw std::invalid_argument("missing value for variable " + vars_[i]);
    vals[i] = it->second;
  }
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= vals[i];
    acc += t;
  }
  return acc;
}

Rat RatMPoly::max_abs_coeff() const {
  Rat m(0);
  for (const auto& [e, c] : terms_) {
    Rat a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

Rat RatMPoly::content_rat() const {
  if (terms_.empty()) return Rat(1);
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& [e, c] : terms_) {
    num_gcd = int_gcd(num_gcd, c.get_num());
    den_lcm = int_lcm(den_lcm, c.get_den());
  }
  Rat r(num_gcd, den_lcm);
  r.canonicalize();
  return r;
}

RatMPoly::Expo RatMPoly::graded_lex_leading() const {
  Expo best = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    if (grlex_less(best, e)) best = e;
  return best;
}

RatMPoly RatMPoly::primitive() const {
  if (terms_.empty()) return *this;
  Rat c = content_rat();
  RatMPoly r = scaled(Rat(1) / c);
  if (r.terms_.at(r.graded_lex_leading()) < 0) r = -r;
  return r;
}

std::optional<RatMPoly> RatMPoly::divided_exact(const RatMPoly& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return RatMPoly();
  RatMPoly rem = *this, div = divisor;
  align(rem, div);
  RatMPoly quot;
  quot.vars_ = rem.vars_;
  const Expo dlead = div.graded_lex_leading();
  const Rat dlc = div.terms_.at(dlead);
  while (!rem.terms_.empty()) {
    Expo rlead = rem.graded_lex_leading();
    Expo q;
    for (int i = 0; i < kMaxVars; ++i) {
      int diff = rlead[i] - dlead[i];
      if (diff < 0) return std::nullopt;
      q[i] = static_cast<int16_t>(diff);
    }
    Rat qc = rem.terms_.at(rlead) / dlc;
    quot.add_term(q, qc);
    // rem -= qc * x^q * div
    for (const auto& [e, c] : div.terms_) {
      Expo ne;
      for (int i = 0; i < kMaxVars; ++i)
        ne[i] = static_cast<int16_t>(e[i] + q[i]);
      rem.add_term(ne, -qc * c);
    }
  }
  quot.canonicalize_vars();
  return quot;
}

std::string RatMPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest lex term first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool has_var = total_of(e) > 0;
    if (!has_var || a != 1) os << rat_to_string(a);
    bool lead = !has_var || a != 1;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (lead) os << "*";
      lead = true;
      os << vars_[i];
      if (e[i] > 1) os << "^" << int(e[i]);
    }
  }
  return os.str();
}

void RatMPoly::for_each_term(
    const std::function<void(const std::vector<int>&, const Rat&)>& fn) const {
  std::vector<int> exps(vars_.size());
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < vars_.size(); ++i) exps[i] = e[i];
    fn(exps, c);
  }
}

RatMPoly RatMPoly::normalized() const {
  RatMPoly r = *this;
  r.canonicalize_vars();
  return r;
}

void RatMPoly::set_term(const std::vector<int>& exps, const Rat& coeff) {
  if (exps.size() != vars_.size())
    throw std::invalid_argument("exponent arity mismatch");
  Expo e = zero_expo();
  for (std::size_t i = 0; i < exps.size(); ++i)
    e[i] = static_cast<int16_t>(exps[i]);
  auto it = terms_.find(e);
  if (it != terms_.end()) terms_.erase(it);
  if (coeff != 0) terms_.emplace(e, coeff);
}

}  // namespace quadanchor
