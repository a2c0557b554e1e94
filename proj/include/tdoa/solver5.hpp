#pragma once

#include <array>
#include <vector>

#include "tdoa/geom3.hpp"
#include "tdoa/localization.hpp"
#include "tdoa/measurement.hpp"

namespace tdoa {

// Below this fraction of the largest baseline a range difference is treated
// as too close to zero to divide by.
inline constexpr double kDeltaEpsilon = 1e-9;

// Sensors (3,2), (4,3), (5,4) in 1-based numbering.
inline constexpr Pairing kDefaultPairing{{{2, 1}, {3, 2}, {4, 3}}};

enum class RowForm {
  Auto,     // literal ratio form unless a delta is near zero
  Literal,  // 2(r_k - (d_k/d_j) r_j) . r_S = ...; requires d_j != 0
  Cleared,  // the literal row multiplied through by d_j
};

struct FiveSensorSystem {
  Mat3 B;
  Vec3 x;
  Pairing pairing{};
  std::array<bool, 3> cleared_rows{};
};

// The default pairing followed by the remaining 3-of-4 selections from the
// cyclic pair sequence (3,2),(4,3),(5,4),(2,5).
std::vector<Pairing> candidate_pairings();

// Throws Error(DegenerateDeltas) if a pairing has d_k = d_j = 0 (the row
// vanishes), Error(InvalidInput) if `form` is Literal and a divisor is zero.
FiveSensorSystem build_system_5(const ReferencedArray& rel, const RangeDifferences& d,
                                const Pairing& pairing = kDefaultPairing,
                                RowForm form = RowForm::Auto);

// Exact linear five-sensor solution. Tries candidate_pairings() in order and
// throws SingularMatrix / DegenerateDeltas only if none yields a full-rank
// system.
LocalizationResult solve_5(const SensorArray& sensors, const RangeDifferences& d);

}  // namespace tdoa
