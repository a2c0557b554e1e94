#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdoa/geom3.hpp"

namespace tdoa {

// Minimum pairwise separation (meters) between sensors, and between the
// source and any sensor.
inline constexpr double kMinSeparation = 1e-9;

inline constexpr double kSpeedOfLight = 299792458.0;

// Ordered absolute sensor positions. Index 0 is the reference sensor; to use
// a different reference, reorder the positions before constructing.
class SensorArray {
public:
  // Throws Error(InvalidInput) unless there are 4 or 5 finite, pairwise
  // distinct positions.
  explicit SensorArray(std::vector<Vec3> positions);

  std::size_t size() const { return positions_.size(); }
  const Vec3& operator[](std::size_t i) const { return positions_[i]; }
  std::span<const Vec3> positions() const { return positions_; }
  const Vec3& reference() const { return positions_.front(); }

  // Largest pairwise sensor distance.
  double max_baseline() const;

private:
  std::vector<Vec3> positions_;
};

struct ReferencedArray {
  std::vector<Vec3> rel;  // rel[k] = positions[k] - positions[0]; rel[0] == 0
  Vec3 origin;

  std::size_t size() const { return rel.size(); }
};

// delta[k-1] = rho_k - rho_0 for k = 1..N-1 (0-based sensor indices), meters.
class RangeDifferences {
public:
  // Throws Error(InvalidInput) unless 3 or 4 finite values are given.
  explicit RangeDifferences(std::vector<double> deltas);

  std::size_t n_sensors() const { return deltas_.size() + 1; }
  std::span<const double> values() const { return deltas_; }

  // Range difference of 0-based sensor k against the reference; 0 for k == 0.
  double of_sensor(std::size_t k) const { return k == 0 ? 0.0 : deltas_[k - 1]; }

  double sum_of_squares() const;

private:
  std::vector<double> deltas_;
};

struct Scenario {
  // Throws Error(InvalidInput) if the source is not finite or lies within
  // kMinSeparation of a sensor.
  Scenario(SensorArray sensors, Vec3 source);

  SensorArray sensors;
  Vec3 source;
};

ReferencedArray reference_frame(const SensorArray& sensors);

// Source-to-sensor distances, evaluated in the reference sensor's frame.
std::vector<double> true_ranges(const Scenario& scenario);

RangeDifferences range_differences(const Scenario& scenario);

constexpr double tdoa_to_range_diff(double dt_seconds, double c) { return c * dt_seconds; }

constexpr Vec3 unreference(const Vec3& rel_source, const Vec3& origin) { return rel_source + origin; }

// Checks |delta_k| <= |r_k| (with round-off slack) for every sensor; throws
// Error(InvalidInput) on arity mismatch or a violated triangle inequality.
void check_consistent(const ReferencedArray& rel, const RangeDifferences& d);

}  // namespace tdoa
