#include "tdoa/solver4.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tdoa/error.hpp"

namespace tdoa {

FourSensorSystem build_system_4(const ReferencedArray& rel, const RangeDifferences& d) {
  if (rel.size() != 4 || d.n_sensors() != 4) {
    throw Error(ErrorCode::InvalidInput, "four-sensor system needs 4 sensors and 3 range differences");
  }
  FourSensorSystem sys;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& rk = rel.rel[i + 1];
    const double dk = d.of_sensor(i + 1);
    sys.C.set_row(i, -2.0 * rk);
    sys.z[i] = 2.0 * dk;
    sys.y[i] = dot(rk, rk) - dk * dk;
  }
  try {
    const LinearSolution xi = solve3_pivoted(sys.C, sys.z);
    const LinearSolution eta = solve3_pivoted(sys.C, sys.y);
    sys.xi = xi.solution;
    sys.eta = eta.solution;
    sys.pivots = xi.pivots;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularMatrix,
                "C = -2 [r_2; r_3; r_4] is rank-deficient (sensors are coplanar with the reference)");
  }
  return sys;
}

QuadraticRoots solve_rho1(const FourSensorSystem& sys, double baseline) {
  QuadraticRoots q;
  const double xixi = dot(sys.xi, sys.xi);
  q.a = xixi - 1.0;
  q.b_half = dot(sys.xi, sys.eta);
  q.c_coef = dot(sys.eta, sys.eta);

  std::vector<double> raw;
  if (std::abs(q.a) < kLinearEpsilon * (xixi + 1.0)) {
    q.linear_fallback = true;
    if (q.b_half == 0.0) {
      throw Error(ErrorCode::DegenerateLinear,
                  "rho1 quadratic degenerates (xi'xi = 1 and xi'eta = 0); rho1 is undetermined");
    }
    raw.push_back(q.c_coef / (2.0 * q.b_half));
  } else {
    double disc = q.b_half * q.b_half - q.a * q.c_coef;
    if (disc < 0.0) {
      if (disc >= -kDiscriminantEpsilon * q.b_half * q.b_half) {
        disc = 0.0;
      } else {
        throw Error(ErrorCode::NoRealSolution,
                    "rho1 quadratic has a negative discriminant; the range differences are inconsistent");
      }
    }
    q.discriminant = disc;
    // Larger-magnitude root from the sign-matched numerator, the other from
    // the product of roots c/a, avoiding cancellation in b -/+ sqrt(disc).
    const double s = q.b_half + std::copysign(std::sqrt(disc), q.b_half);
    if (disc == 0.0) {
      raw.push_back(q.b_half / q.a);
    } else {
      raw.push_back(s / q.a);
      raw.push_back(q.c_coef / s);
    }
  }

  const double clamp_level = kNegativeRootEpsilon * baseline;
  for (double r : raw) {
    if (!std::isfinite(r) || r < -clamp_level) continue;
    q.roots.push_back(std::max(r, 0.0));
  }
  std::sort(q.roots.begin(), q.roots.end());
  q.roots.erase(std::unique(q.roots.begin(), q.roots.end()), q.roots.end());
  return q;
}

std::vector<CandidatePosition> candidate_positions(const FourSensorSystem& sys, const QuadraticRoots& roots,
                                                   const Vec3& origin) {
  std::vector<CandidatePosition> out;
  out.reserve(roots.roots.size());
  for (double rho1 : roots.roots) out.push_back({rho1, unreference(rho1 * sys.xi - sys.eta, origin)});
  return out;
}

double tdoa_residual(const Vec3& position, const ReferencedArray& rel, const RangeDifferences& d) {
  const Vec3 source = position - rel.origin;
  const double rho1 = norm(source);
  double acc = 0.0;
  for (std::size_t k = 1; k < rel.size(); ++k) {
    const double e = (distance(rel.rel[k], source) - rho1) - d.of_sensor(k);
    acc += e * e;
  }
  return acc;
}

LocalizationResult resolve_ambiguity(std::span<const CandidatePosition> candidates, const ReferencedArray& rel,
                                     const RangeDifferences& d) {
  if (candidates.empty()) {
    throw Error(ErrorCode::NoCandidates, "no nonnegative rho1 root survives; nothing to localize");
  }
  LocalizationResult result;
  result.method = Method::FourSensor;
  for (const CandidatePosition& c : candidates) {
    result.candidates.push_back({c.rho1, c.position, tdoa_residual(c.position, rel, d)});
  }

  if (result.candidates.size() == 1) {
    result.resolved_by = AmbiguityResolution::SingleRoot;
  } else {
    result.resolved_by = AmbiguityResolution::Residual;
    const double tie = kTieEpsilon * d.sum_of_squares();
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.candidates.size(); ++i) {
      if (result.candidates[i].residual < result.candidates[best].residual) best = i;
    }
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
      if (i != best && std::abs(result.candidates[i].residual - result.candidates[best].residual) <= tie) {
        result.ambiguous = true;
        best = std::min(best, i);
      }
    }
    result.selected = best;
  }
  result.position = result.candidates[result.selected].position;
  return result;
}

LocalizationResult solve_4(const SensorArray& sensors, const RangeDifferences& d) {
  if (sensors.size() != 4) {
    throw Error(ErrorCode::InvalidInput, "four-sensor solver called with " + std::to_string(sensors.size()) +
                                             " sensors");
  }
  const ReferencedArray rel = reference_frame(sensors);
  check_consistent(rel, d);

  const FourSensorSystem sys = build_system_4(rel, d);
  const QuadraticRoots roots = solve_rho1(sys, sensors.max_baseline());

  // A root at rho1 ~ 0 puts the source on the reference sensor, which no
  // valid scenario allows.
  std::vector<CandidatePosition> candidates;
  for (const CandidatePosition& c : candidate_positions(sys, roots, rel.origin)) {
    if (c.rho1 > kMinSeparation) candidates.push_back(c);
  }

  LocalizationResult result = resolve_ambiguity(candidates, rel, d);
  result.diagnostics.pivots = sys.pivots;
  result.diagnostics.discriminant = roots.discriminant;
  result.diagnostics.linear_fallback = roots.linear_fallback;
  return result;
}

}  // namespace tdoa
