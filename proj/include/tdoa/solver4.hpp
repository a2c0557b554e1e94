#pragma once

#include <span>
#include <vector>

#include "tdoa/geom3.hpp"
#include "tdoa/localization.hpp"
#include "tdoa/measurement.hpp"

namespace tdoa {

inline constexpr double kLinearEpsilon = 1e-12;        // |a| below this (relative) → linear fallback
inline constexpr double kDiscriminantEpsilon = 1e-9;   // relative to b_half^2
inline constexpr double kNegativeRootEpsilon = 1e-12;  // relative to the max baseline
inline constexpr double kTieEpsilon = 1e-9;            // relative to sum of delta^2

// rho1 * z = y + C * r_S, with xi = C^-1 z and eta = C^-1 y.
struct FourSensorSystem {
  Mat3 C;
  Vec3 z;
  Vec3 y;
  Vec3 xi;
  Vec3 eta;
  PivotInfo pivots;
};

// Nonnegative roots of a * rho^2 - 2 * b_half * rho + c_coef = 0, ascending.
struct QuadraticRoots {
  double a = 0.0;
  double b_half = 0.0;
  double c_coef = 0.0;
  double discriminant = 0.0;  // b_half^2 - a * c_coef, after tangency clamping
  std::vector<double> roots;
  bool linear_fallback = false;
};

struct CandidatePosition {
  double rho1 = 0.0;
  Vec3 position;  // absolute frame
};

// Throws Error(SingularMatrix) when C is rank-deficient.
FourSensorSystem build_system_4(const ReferencedArray& rel, const RangeDifferences& d);

// `baseline` scales the tolerance for clamping slightly negative roots to 0.
// Throws NoRealSolution for a clearly negative discriminant and
// DegenerateLinear when the quadratic collapses to a constant.
QuadraticRoots solve_rho1(const FourSensorSystem& sys, double baseline);

std::vector<CandidatePosition> candidate_positions(const FourSensorSystem& sys, const QuadraticRoots& roots,
                                                   const Vec3& origin);

// TDOA residual of an absolute position against the measured differences.
double tdoa_residual(const Vec3& position, const ReferencedArray& rel, const RangeDifferences& d);

// Picks the candidate with the smallest TDOA residual. On a tie (within
// kTieEpsilon * sum delta^2) the first candidate wins and `ambiguous` is set.
// Throws Error(NoCandidates) for an empty list.
LocalizationResult resolve_ambiguity(std::span<const CandidatePosition> candidates, const ReferencedArray& rel,
                                     const RangeDifferences& d);

LocalizationResult solve_4(const SensorArray& sensors, const RangeDifferences& d);

}  // namespace tdoa
