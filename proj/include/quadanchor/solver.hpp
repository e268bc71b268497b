#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadanchor/geometry.hpp"
#include "quadanchor/sysbuild.hpp"

namespace quadanchor {

struct ToleranceSettings {
  double tol_accept = 1e-8;  // residual bound for an emitted pair
  double tol_real = 1e-8;    // imaginary-part bound, relative
  double dedupe = 1e-6;      // duplicate-merge radius, relative
  unsigned seed = 0;         // reserved for randomized retries
};

struct SolutionPair {
  CPoint2 X{};
  CPoint2 Y{};
  double residual = 0.0;  // max |equation| over the four quartics
  bool is_real = false;
  int multiplicity = 1;
};

enum class Classification { Finite, PositiveDimensional, InvalidInput };

struct SolveReport {
  Classification classification = Classification::InvalidInput;
  std::vector<SolutionPair> solutions;  // Finite only, canonically sorted
  RatMPoly witness_curve;  // PositiveDimensional only: common factor in Y
  ValidationReport validation;
  int bezout_ceiling = 0;
  std::vector<std::string> diagnostics;
};

// Positive-degree common factor of the two cleared constraints, with the
// recorded cleared denominators divided back out. Absent when the residual
// factor is constant, i.e. when the constraint pair cuts out only finitely
// many points.
std::optional<RatMPoly> detect_positive_dimensional(const ReducedSystem& rs);

// Damped Newton on the four quartic equations in four complex unknowns.
// Absent on divergence. A near-singular Jacobian at the limit marks the
// pair with multiplicity 2 as a multiple-root flag; callers may refine the
// count from root clustering.
std::optional<SolutionPair> newton_polish(const Configuration& config,
                                          const CPoint2& X, const CPoint2& Y,
                                          const ToleranceSettings& tol = {});

SolveReport solve(const Configuration& config,
                  const ToleranceSettings& tol = {});

struct CertificateSummary {
  bool residual_ok = false;     // re-evaluation in extended precision
  bool swap_ok = false;         // (X,Y) emitted implies (Y,X) emitted
  bool conjugate_ok = false;    // closed under coordinate conjugation
  bool cramer_ok = false;       // X matches the recovery from its Y
  bool determinant_ok = false;  // 4x4 dependence determinant vanishes
  double max_residual = 0.0;
  std::string details;
  bool ok() const {
    return residual_ok && swap_ok && conjugate_ok && cramer_ok &&
           determinant_ok;
  }
};

CertificateSummary certify(const SolveReport& report,
                           const Configuration& config);

// Residual of the four quartic equations at a candidate pair.
double quartic_residual(const Configuration& config, const CPoint2& X,
                        const CPoint2& Y);

// Points on a positive-dimensional witness completed to full solution
// pairs: grid-samples the curve, solves the circle relations for X, keeps
// pairs whose full residual is below tol_accept. Returns up to `count`
// pairs.
std::vector<SolutionPair> sample_witness_solutions(
    const Configuration& config, const RatMPoly& witness, int count,
    const ToleranceSettings& tol = {});

}  // namespace quadanchor
