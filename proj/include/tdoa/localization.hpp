#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "tdoa/geom3.hpp"

namespace tdoa {

enum class Method { FiveSensor, FourSensor };

enum class AmbiguityResolution { NotApplicable, SingleRoot, Residual };

std::string_view to_string(Method m);
std::string_view to_string(AmbiguityResolution r);

// One (k, j) pairing of 0-based sensor indices used to form a row of the
// five-sensor system.
struct SensorPair {
  std::size_t k = 0;
  std::size_t j = 0;

  friend constexpr bool operator==(const SensorPair&, const SensorPair&) = default;
};

using Pairing = std::array<SensorPair, 3>;

// A candidate source position from the four-sensor quadratic. `residual` is
// the sum over k of ((rho_k - rho_1) - delta_k1)^2 recomputed from geometry.
struct Candidate {
  double rho1 = 0.0;
  Vec3 position;
  double residual = 0.0;
};

struct Diagnostics {
  PivotInfo pivots;
  // Five-sensor only: the pairing that produced the solution, which rows
  // used the delta-cleared form, and how many pairings were tried.
  Pairing pairing{};
  std::array<bool, 3> cleared_rows{};
  std::size_t pairing_attempts = 0;
  // Four-sensor only.
  double discriminant = 0.0;
  bool linear_fallback = false;
};

struct LocalizationResult {
  Vec3 position;
  Method method = Method::FiveSensor;
  std::vector<Candidate> candidates;
  std::size_t selected = 0;
  AmbiguityResolution resolved_by = AmbiguityResolution::NotApplicable;
  // Set when two candidates scored equal residuals within tolerance and the
  // first was taken by the tie-break rule.
  bool ambiguous = false;
  Diagnostics diagnostics;
};

}  // namespace tdoa
