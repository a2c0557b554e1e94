#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "tdoa/error.hpp"
#include "tdoa/localization.hpp"
#include "tdoa/measurement.hpp"

namespace tdoa {

enum class FailureCause { None, SingularGeometry, WrongRoot, NumericalError };

std::string_view to_string(FailureCause cause);

// 13 log-spaced points from 1e-6 to 1.
std::vector<double> default_scale_grid();

// `count` log-spaced points from lo to hi inclusive (count == 1 gives {lo}).
std::vector<double> log_scale_grid(double lo, double hi, std::size_t count);

struct ExperimentConfig {
  std::size_t n_instances = 1000;
  int n_sensors = 5;
  double source_scale = 1.0;
  std::vector<double> thresholds{1e-6, 1e-3};
  std::uint64_t seed = 0;
  // Scales swept by run_sweep; when empty, only source_scale is run.
  std::vector<double> scale_grid = default_scale_grid();
  // Worker threads for run_sweep; 0 means hardware concurrency. Results do
  // not depend on this value.
  unsigned threads = 0;

  // Throws Error(InvalidConfig).
  void validate() const;

  std::vector<double> scales() const;
};

// Splitmix64-based mixing of (seed, scale index, instance index).
std::uint64_t instance_seed(std::uint64_t seed, std::size_t scale_index, std::size_t instance_index);

// Uniform draw in [0, 1) from the top 53 bits of one generator output.
double uniform01(std::mt19937_64& rng);

// Sensors uniform in [-0.5, 0.5)^3; source uniform in source_scale * [-0.5, 0.5)^3.
// Coincident draws are resampled; after 100 attempts throws
// Error(DegenerateSampling).
Scenario sample_scenario(std::mt19937_64& rng, int n_sensors, double source_scale);

struct InstanceResult {
  Scenario scenario;
  std::optional<LocalizationResult> estimate;
  std::optional<ErrorCode> error;
  std::optional<double> rel_error;
  // One entry per threshold, in config order.
  std::vector<bool> success_at;
  std::vector<FailureCause> failure_at;
  // Cause at the tightest threshold.
  FailureCause failure_cause = FailureCause::None;
  // For four-sensor estimates: relative error of the best non-selected
  // candidate, if any.
  std::optional<double> losing_rel_error;
};

InstanceResult run_instance(const Scenario& scenario, std::span<const double> thresholds);

struct SweepCell {
  int n_sensors = 0;
  double source_scale = 0.0;
  double threshold = 0.0;
  std::size_t n_success = 0;
  std::size_t n_singular = 0;
  std::size_t n_wrong_root = 0;
  std::size_t n_numerical = 0;
  std::size_t n_instances = 0;

  double success_fraction() const {
    return n_instances == 0 ? 0.0 : static_cast<double>(n_success) / static_cast<double>(n_instances);
  }

  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

// Cells ordered by scale, then threshold.
struct SweepSummary {
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t scale_index, std::size_t threshold_index, std::size_t n_thresholds) const {
    return cells.at(scale_index * n_thresholds + threshold_index);
  }

  friend bool operator==(const SweepSummary&, const SweepSummary&) = default;
};

// All instances for one entry of config.scales(), in instance order.
std::vector<InstanceResult> run_scale(const ExperimentConfig& config, std::size_t scale_index);

SweepSummary run_sweep(const ExperimentConfig& config);

}  // namespace tdoa
