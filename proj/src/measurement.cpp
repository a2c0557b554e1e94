#include "tdoa/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tdoa/error.hpp"

namespace tdoa {

SensorArray::SensorArray(std::vector<Vec3> positions) : positions_(std::move(positions)) {
  if (positions_.size() != 4 && positions_.size() != 5) {
    throw Error(ErrorCode::InvalidInput,
                "sensor array must hold 4 or 5 sensors, got " + std::to_string(positions_.size()));
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!is_finite(positions_[i])) {
      throw Error(ErrorCode::InvalidInput, "sensor " + std::to_string(i + 1) + " has a non-finite coordinate");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(positions_[i], positions_[j]) <= kMinSeparation) {
        throw Error(ErrorCode::InvalidInput, "sensors " + std::to_string(j + 1) + " and " +
                                                 std::to_string(i + 1) + " coincide");
      }
    }
  }
}

double SensorArray::max_baseline() const {
  double best = 0.0;
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) best = std::max(best, distance(positions_[i], positions_[j]));
  }
  return best;
}

RangeDifferences::RangeDifferences(std::vector<double> deltas) : deltas_(std::move(deltas)) {
  if (deltas_.size() != 3 && deltas_.size() != 4) {
    throw Error(ErrorCode::InvalidInput,
                "expected 3 or 4 range differences, got " + std::to_string(deltas_.size()));
  }
  if (!std::all_of(deltas_.begin(), deltas_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::InvalidInput, "range differences must be finite");
  }
}

double RangeDifferences::sum_of_squares() const {
  double acc = 0.0;
  for (double v : deltas_) acc += v * v;
  return acc;
}

Scenario::Scenario(SensorArray sensors_in, Vec3 source_in)
    : sensors(std::move(sensors_in)), source(source_in) {
  if (!is_finite(source)) throw Error(ErrorCode::InvalidInput, "source has a non-finite coordinate");
  for (const Vec3& p : sensors.positions()) {
    if (distance(p, source) <= kMinSeparation) {
      throw Error(ErrorCode::InvalidInput, "source coincides with a sensor");
    }
  }
}

ReferencedArray reference_frame(const SensorArray& sensors) {
  ReferencedArray out;
  out.origin = sensors.reference();
  out.rel.reserve(sensors.size());
  for (const Vec3& p : sensors.positions()) out.rel.push_back(p - out.origin);
  out.rel.front() = Vec3{};
  return out;
}

std::vector<double> true_ranges(const Scenario& scenario) {
  const ReferencedArray rel = reference_frame(scenario.sensors);
  const Vec3 source = scenario.source - rel.origin;
  std::vector<double> ranges;
  ranges.reserve(rel.size());
  for (const Vec3& r : rel.rel) ranges.push_back(distance(r, source));
  return ranges;
}

RangeDifferences range_differences(const Scenario& scenario) {
  const std::vector<double> rho = true_ranges(scenario);
  std::vector<double> deltas;
  deltas.reserve(rho.size() - 1);
  for (std::size_t k = 1; k < rho.size(); ++k) deltas.push_back(rho[k] - rho[0]);
  return RangeDifferences(std::move(deltas));
}

void check_consistent(const ReferencedArray& rel, const RangeDifferences& d) {
  if (d.n_sensors() != rel.size()) {
    throw Error(ErrorCode::InvalidInput, "got " + std::to_string(d.values().size()) +
                                             " range differences for " + std::to_string(rel.size()) +
                                             " sensors");
  }
  for (std::size_t k = 1; k < rel.size(); ++k) {
    const double baseline = norm(rel.rel[k]);
    if (std::abs(d.of_sensor(k)) > baseline * (1.0 + 1e-9)) {
      throw Error(ErrorCode::InvalidInput, "range difference for sensor " + std::to_string(k + 1) +
                                               " exceeds its baseline to the reference sensor");
    }
  }
}

}  // namespace tdoa
