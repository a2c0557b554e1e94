#include "tdoa/solver5.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tdoa/error.hpp"

namespace tdoa {
namespace {

double max_baseline(const ReferencedArray& rel) {
  double best = 0.0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) best = std::max(best, distance(rel.rel[i], rel.rel[j]));
  }
  return best;
}

struct Row {
  Vec3 coeffs;
  double rhs = 0.0;
};

Row literal_row(const Vec3& rk, const Vec3& rj, double dk, double dj) {
  const double ratio = dk / dj;
  return {2.0 * (rk - ratio * rj), -(dk * dk - ratio * dj * dj) + (dot(rk, rk) - ratio * dot(rj, rj))};
}

Row cleared_row(const Vec3& rk, const Vec3& rj, double dk, double dj) {
  return {2.0 * (dj * rk - dk * rj), -dk * dj * (dk - dj) + dj * dot(rk, rk) - dk * dot(rj, rj)};
}

std::string pair_name(const SensorPair& p) {
  return "(" + std::to_string(p.k + 1) + "," + std::to_string(p.j + 1) + ")";
}

}  // namespace

std::vector<Pairing> candidate_pairings() {
  constexpr std::array<SensorPair, 4> cycle{{{2, 1}, {3, 2}, {4, 3}, {1, 4}}};
  std::vector<Pairing> out;
  for (std::size_t start = 0; start < cycle.size(); ++start) {
    out.push_back({cycle[start], cycle[(start + 1) % 4], cycle[(start + 2) % 4]});
  }
  return out;
}

FiveSensorSystem build_system_5(const ReferencedArray& rel, const RangeDifferences& d,
                                const Pairing& pairing, RowForm form) {
  if (rel.size() != 5 || d.n_sensors() != 5) {
    throw Error(ErrorCode::InvalidInput, "five-sensor system needs 5 sensors and 4 range differences");
  }
  const double switch_level = kDeltaEpsilon * max_baseline(rel);

  FiveSensorSystem sys;
  sys.pairing = pairing;
  for (std::size_t i = 0; i < 3; ++i) {
    const SensorPair& p = pairing[i];
    if (p.k == 0 || p.j == 0 || p.k >= 5 || p.j >= 5 || p.k == p.j) {
      throw Error(ErrorCode::InvalidInput, "invalid sensor pairing " + pair_name(p));
    }
    const double dk = d.of_sensor(p.k);
    const double dj = d.of_sensor(p.j);
    if (dk == 0.0 && dj == 0.0) {
      throw Error(ErrorCode::DegenerateDeltas,
                  "both range differences of pairing " + pair_name(p) + " are zero; the row vanishes");
    }

    bool cleared = false;
    switch (form) {
      case RowForm::Auto: cleared = std::min(std::abs(dk), std::abs(dj)) < switch_level; break;
      case RowForm::Literal:
        if (dj == 0.0) {
          throw Error(ErrorCode::InvalidInput, "literal row form divides by a zero range difference");
        }
        break;
      case RowForm::Cleared: cleared = true; break;
    }

    const Vec3& rk = rel.rel[p.k];
    const Vec3& rj = rel.rel[p.j];
    const Row row = cleared ? cleared_row(rk, rj, dk, dj) : literal_row(rk, rj, dk, dj);
    sys.B.set_row(i, row.coeffs);
    sys.x[i] = row.rhs;
    sys.cleared_rows[i] = cleared;
  }
  return sys;
}

LocalizationResult solve_5(const SensorArray& sensors, const RangeDifferences& d) {
  if (sensors.size() != 5) {
    throw Error(ErrorCode::InvalidInput, "five-sensor solver called with " + std::to_string(sensors.size()) +
                                             " sensors");
  }
  const ReferencedArray rel = reference_frame(sensors);
  check_consistent(rel, d);

  std::size_t attempts = 0;
  bool saw_singular = false;
  std::string last_reason;
  for (const Pairing& pairing : candidate_pairings()) {
    ++attempts;
    try {
      const FiveSensorSystem sys = build_system_5(rel, d, pairing);
      const LinearSolution sol = solve3_pivoted(sys.B, sys.x);

      LocalizationResult result;
      result.method = Method::FiveSensor;
      result.position = unreference(sol.solution, rel.origin);
      result.resolved_by = AmbiguityResolution::NotApplicable;
      result.diagnostics.pivots = sol.pivots;
      result.diagnostics.pairing = sys.pairing;
      result.diagnostics.cleared_rows = sys.cleared_rows;
      result.diagnostics.pairing_attempts = attempts;
      return result;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularMatrix) {
        saw_singular = true;
      } else if (e.code() != ErrorCode::DegenerateDeltas) {
        throw;
      }
      last_reason = e.what();
    }
  }
  if (saw_singular) {
    throw Error(ErrorCode::SingularMatrix,
                "B = [rows of the pairing equations] is rank-deficient for every sensor pairing: " + last_reason);
  }
  throw Error(ErrorCode::DegenerateDeltas, "every sensor pairing has a vanishing row: " + last_reason);
}

}  // namespace tdoa
