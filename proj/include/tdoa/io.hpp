#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tdoa/localization.hpp"
#include "tdoa/measurement.hpp"
#include "tdoa/montecarlo.hpp"

namespace tdoa {

// Scenario document as it appears on disk (JSON):
//
//   {
//     "sensors": [[x, y, z], ...],   // 4 or 5 positions, meters; first is the reference
//     "source":  [x, y, z],          // truth; range differences are derived from it
//     "deltas":  [d21, d31, ...],    // or measured range differences, meters
//     "times":   [t1, t2, ...],      // or arrival times per sensor, seconds
//     "c": 299792458                 // propagation speed for "times", m/s
//   }
//
// Exactly one of source / deltas / times must be present.
struct ScenarioFile {
  std::vector<Vec3> sensors;
  std::optional<Vec3> source;
  std::optional<std::vector<double>> deltas;
  std::optional<std::vector<double>> times;
  double c = kSpeedOfLight;
};

// Throws Error(ParseError) on malformed documents, wrong arity, or a missing
// or duplicated measurement source.
ScenarioFile parse_scenario(const std::string& text);
std::string format_scenario(const Scenario& scenario);

struct LocalizationInput {
  SensorArray sensors;
  RangeDifferences deltas;
  std::optional<Vec3> truth;
};

// Validates the geometry and derives range differences from whichever
// measurement the file carries.
LocalizationInput to_localization_input(const ScenarioFile& file);

std::string format_report_text(const LocalizationResult& result, const std::optional<Vec3>& truth);
std::string format_report_json(const LocalizationResult& result, const std::optional<Vec3>& truth);

// Header: n_sensors,source_scale,threshold,success_fraction,n_singular,n_wrong_root,n_numerical,n_instances
inline constexpr const char* kSweepCsvHeader =
    "n_sensors,source_scale,threshold,success_fraction,n_singular,n_wrong_root,n_numerical,n_instances";

void write_sweep_csv(std::ostream& os, const SweepSummary& summary);
// Throws Error(ParseError).
SweepSummary read_sweep_csv(std::istream& is);
void write_sweep_json(std::ostream& os, const SweepSummary& summary);

}  // namespace tdoa
