#include "quadanchor/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace quadanchor {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// digits with optional leading sign
bool plain_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  return i < s.size() && all_digits(s.substr(i));
}

std::optional<Rat> parse_decimal(const std::string& text) {
  // [sign] digits [. digits] [e [sign] digits], at least one digit overall
  std::string s = text;
  bool neg = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string int_part, frac_part, exp_part;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
    int_part += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      frac_part += s[pos++];
  }
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::string e;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) e += s[pos++];
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      e += s[pos++];
    if (!plain_integer(e)) return std::nullopt;
    exp10 = std::strtol(e.c_str(), nullptr, 10);
  }
  if (pos != s.size()) return std::nullopt;

  mpz_class num(int_part.empty() ? "0" : int_part);
  for (char c : frac_part) {
    num *= 10;
    num += c - '0';
  }
  mpz_class den(1);
  long shift = exp10 - static_cast<long>(frac_part.size());
  mpz_class ten(10);
  if (shift >= 0) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
    num *= p;
  } else {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
  }
  if (neg) num = -num;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
    if (!plain_integer(ns) || !plain_integer(ds)) return std::nullopt;
    mpz_class n(ns), d(ds);
    if (d == 0) return std::nullopt;
    Rat r(n, d);
    r.canonicalize();
    return r;
  }
  if (plain_integer(text)) {
    return Rat(mpz_class{text});
  }
  return parse_decimal(text);
}

std::string rat_to_string(const Rat& value) { return value.get_str(); }

double rat_to_double_scaled(const Rat& value, const Rat& scale) {
  if (scale == 0) return value.get_d();
  Rat q = value / scale;
  return q.get_d();
}

mpz_class int_gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class int_lcm(const mpz_class& a, const mpz_class& b) {
  if (a == 0 || b == 0) return 0;
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace quadanchor
