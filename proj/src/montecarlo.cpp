#include "tdoa/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "tdoa/solver4.hpp"
#include "tdoa/solver5.hpp"

namespace tdoa {
namespace {

constexpr int kMaxSampleAttempts = 100;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vec3 centered_unit_draw(std::mt19937_64& rng) {
  const double x = uniform01(rng);
  const double y = uniform01(rng);
  const double z = uniform01(rng);
  return {x - 0.5, y - 0.5, z - 0.5};
}

double relative_error(const Vec3& estimate, const Vec3& truth) {
  const double scale = norm(truth);
  const double err = distance(estimate, truth);
  return scale > 0.0 ? err / scale : std::numeric_limits<double>::infinity();
}

}  // namespace

std::string_view to_string(FailureCause cause) {
  switch (cause) {
    case FailureCause::None: return "none";
    case FailureCause::SingularGeometry: return "singular-geometry";
    case FailureCause::WrongRoot: return "wrong-root";
    case FailureCause::NumericalError: return "numerical-error";
  }
  return "unknown";
}

std::vector<double> log_scale_grid(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> grid;
  grid.reserve(count);
  const double llo = std::log10(lo);
  const double step = (std::log10(hi) - llo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(std::pow(10.0, llo + step * static_cast<double>(i)));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> default_scale_grid() { return log_scale_grid(1e-6, 1.0, 13); }

void ExperimentConfig::validate() const {
  if (n_instances < 1) throw Error(ErrorCode::InvalidConfig, "instance count must be at least 1");
  if (n_sensors != 4 && n_sensors != 5) {
    throw Error(ErrorCode::InvalidConfig, "sensor count must be 4 or 5, got " + std::to_string(n_sensors));
  }
  if (thresholds.empty()) throw Error(ErrorCode::InvalidConfig, "at least one threshold is required");
  for (double t : thresholds) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidConfig, "thresholds must be positive");
  }
  for (double s : scales()) {
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidConfig, "source scales must be positive");
  }
}

std::vector<double> ExperimentConfig::scales() const {
  return scale_grid.empty() ? std::vector<double>{source_scale} : scale_grid;
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t scale_index, std::size_t instance_index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(scale_index));
  return splitmix64(h ^ static_cast<std::uint64_t>(instance_index));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Scenario sample_scenario(std::mt19937_64& rng, int n_sensors, double source_scale) {
  if (n_sensors != 4 && n_sensors != 5) {
    throw Error(ErrorCode::InvalidConfig, "sensor count must be 4 or 5, got " + std::to_string(n_sensors));
  }
  if (!(source_scale > 0.0)) throw Error(ErrorCode::InvalidConfig, "source scale must be positive");

  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    std::vector<Vec3> sensors;
    for (int k = 0; k < n_sensors; ++k) sensors.push_back(centered_unit_draw(rng));
    const Vec3 source = source_scale * centered_unit_draw(rng);
    try {
      return Scenario(SensorArray(std::move(sensors)), source);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidInput) throw;
    }
  }
  throw Error(ErrorCode::DegenerateSampling,
              "could not draw a non-degenerate scenario in " + std::to_string(kMaxSampleAttempts) + " attempts");
}

InstanceResult run_instance(const Scenario& scenario, std::span<const double> thresholds) {
  InstanceResult out{scenario, std::nullopt, std::nullopt, std::nullopt, {}, {}, FailureCause::None, std::nullopt};
  const double tightest = thresholds.empty() ? 0.0 : *std::min_element(thresholds.begin(), thresholds.end());

  FailureCause error_cause = FailureCause::None;
  try {
    const RangeDifferences d = range_differences(scenario);
    out.estimate = scenario.sensors.size() == 5 ? solve_5(scenario.sensors, d) : solve_4(scenario.sensors, d);
    out.rel_error = relative_error(out.estimate->position, scenario.source);
    for (std::size_t i = 0; i < out.estimate->candidates.size(); ++i) {
      if (i == out.estimate->selected) continue;
      const double e = relative_error(out.estimate->candidates[i].position, scenario.source);
      if (!out.losing_rel_error || e < *out.losing_rel_error) out.losing_rel_error = e;
    }
  } catch (const Error& e) {
    out.error = e.code();
    error_cause = (e.code() == ErrorCode::SingularMatrix || e.code() == ErrorCode::DegenerateDeltas)
                      ? FailureCause::SingularGeometry
                      : FailureCause::NumericalError;
  }

  for (double t : thresholds) {
    FailureCause cause = error_cause;
    if (out.rel_error) {
      if (*out.rel_error < t) {
        cause = FailureCause::None;
      } else if (out.losing_rel_error && *out.losing_rel_error < tightest) {
        cause = FailureCause::WrongRoot;
      } else {
        cause = FailureCause::NumericalError;
      }
    }
    out.success_at.push_back(cause == FailureCause::None);
    out.failure_at.push_back(cause);
    if (t == tightest) out.failure_cause = cause;
  }
  return out;
}

std::vector<InstanceResult> run_scale(const ExperimentConfig& config, std::size_t scale_index) {
  config.validate();
  const std::vector<double> scales = config.scales();
  const double scale = scales.at(scale_index);
  const std::size_t n = config.n_instances;

  unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

  std::vector<std::optional<InstanceResult>> slots(n);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < n; i += workers) {
        std::mt19937_64 rng(instance_seed(config.seed, scale_index, i));
        slots[i] = run_instance(sample_scenario(rng, config.n_sensors, scale), config.thresholds);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<InstanceResult> results;
  results.reserve(n);
  for (auto& slot : slots) results.push_back(std::move(*slot));
  return results;
}

SweepSummary run_sweep(const ExperimentConfig& config) {
  config.validate();
  const std::vector<double> scales = config.scales();
  SweepSummary summary;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    const std::vector<InstanceResult> results = run_scale(config, s);
    for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
      SweepCell cell;
      cell.n_sensors = config.n_sensors;
      cell.source_scale = scales[s];
      cell.threshold = config.thresholds[t];
      cell.n_instances = results.size();
      for (const InstanceResult& r : results) {
        switch (r.failure_at[t]) {
          case FailureCause::None: ++cell.n_success; break;
          case FailureCause::SingularGeometry: ++cell.n_singular; break;
          case FailureCause::WrongRoot: ++cell.n_wrong_root; break;
          case FailureCause::NumericalError: ++cell.n_numerical; break;
        }
      }
      summary.cells.push_back(cell);
    }
  }
  return summary;
}

}  // namespace tdoa
