#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadanchor/rational.hpp"

namespace quadanchor {

// Sparse multivariate polynomial with exact rational coefficients.
//
// Variables are identified by name and kept sorted; binary operations align
// operands by merging their variable lists, so callers can freely mix
// polynomials built over different subsets of symbols. The exponent vector
// has a fixed capacity which is plenty for this problem domain (the solver
// itself never needs more than five live symbols at once).
class RatMPoly {
 public:
  static constexpr int kMaxVars = 10;
  using Expo = std::array<int16_t, kMaxVars>;

  RatMPoly() = default;
  explicit RatMPoly(const Rat& c);
  explicit RatMPoly(long c);

  static RatMPoly var(const std::string& name);
  // Zero polynomial with a declared variable list (for term-wise builders).
  static RatMPoly with_vars(std::vector<std::string> names);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  // Value of a constant polynomial (zero poly included).
  Rat constant_value() const;

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t term_count() const { return terms_.size(); }

  // Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(const std::string& name) const;

  RatMPoly operator-() const;
  RatMPoly operator+(const RatMPoly& o) const;
  RatMPoly operator-(const RatMPoly& o) const;
  RatMPoly operator*(const RatMPoly& o) const;
  RatMPoly& operator+=(const RatMPoly& o) { return *this = *this + o; }
  RatMPoly& operator-=(const RatMPoly& o) { return *this = *this - o; }
  RatMPoly& operator*=(const RatMPoly& o) { return *this = *this * o; }
  bool operator==(const RatMPoly& o) const;
  bool operator!=(const RatMPoly& o) const { return !(*this == o); }

  RatMPoly scaled(const Rat& c) const;
  RatMPoly pow(unsigned e) const;

  RatMPoly derivative(const std::string& name) const;

  // Exact substitution of a polynomial for one variable.
  RatMPoly substituted(const std::string& name, const RatMPoly& value) const;

  // Coefficients with respect to one variable, ascending power. The entries
  // no longer involve `name`. A polynomial free of `name` yields {itself}.
  std::vector<RatMPoly> coeffs_wrt(const std::string& name) const;
  RatMPoly coeff_of(const std::string& name, int power) const;
  RatMPoly leading_coeff_wrt(const std::string& name) const;

  std::complex<double> eval(
      const std::map<std::string, std::complex<double>>& point) const;
  Rat eval_rat(const std::map<std::string, Rat>& point) const;

  // Largest |coefficient| as a rational (0 for the zero polynomial).
  Rat max_abs_coeff() const;

  // Positive rational c such that (*this)/c has coprime integer coefficients.
  Rat content_rat() const;
  // Integer-primitive form with positive leading coefficient (graded-lex).
  RatMPoly primitive() const;

  // Exact quotient if divisor divides this polynomial, otherwise nothing.
  std::optional<RatMPoly> divided_exact(const RatMPoly& divisor) const;

  std::string to_string() const;

  // Term iteration for serialization: exponents follow vars() order.
  void for_each_term(
      const std::function<void(const std::vector<int>&, const Rat&)>& fn) const;

  // Internal-ish helpers used by the elimination code.
  static void align(RatMPoly& a, RatMPoly& b);
  void set_term(const std::vector<int>& exps, const Rat& coeff);
  // Canonical form after a set_term building pass (drops unused variables).
  RatMPoly normalized() const;

 private:
  void add_term(const Expo& e, const Rat& c);
  void canonicalize_vars();
  Expo graded_lex_leading() const;

  std::vector<std::string> vars_;   // sorted, size <= kMaxVars
  std::map<Expo, Rat> terms_;       // no zero coefficients stored
};

RatMPoly operator*(const Rat& c, const RatMPoly& p);

}  // namespace quadanchor
