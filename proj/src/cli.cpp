#include "tdoa/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tdoa/io.hpp"
#include "tdoa/montecarlo.hpp"
#include "tdoa/solver4.hpp"
#include "tdoa/solver5.hpp"

namespace tdoa::cli {
namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << payload;
    return;
  }
  std::ofstream file(path);
  if (!file || !(file << payload)) throw IoFailure("cannot write '" + path + "'");
}

struct LocateArgs {
  std::string input;
  std::string format = "text";
  std::string out;
};

struct SweepArgs {
  int sensors = 5;
  std::size_t instances = 1000;
  std::uint64_t seed = 0;
  std::vector<double> scales;
  std::vector<double> scale_range;
  std::vector<double> thresholds{1e-6, 1e-3};
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
};

struct GenArgs {
  int sensors = 5;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_locate(const LocateArgs& a, std::ostream& out) {
  const ScenarioFile file = parse_scenario(read_file(a.input));
  const LocalizationInput input = to_localization_input(file);
  const LocalizationResult result =
      input.sensors.size() == 5 ? solve_5(input.sensors, input.deltas) : solve_4(input.sensors, input.deltas);
  emit(a.out, a.format == "json" ? format_report_json(result, input.truth) : format_report_text(result, input.truth),
       out);
  return kOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  ExperimentConfig config;
  config.n_sensors = a.sensors;
  config.n_instances = a.instances;
  config.seed = a.seed;
  config.thresholds = a.thresholds;
  config.threads = a.threads;
  if (!a.scales.empty()) {
    config.scale_grid = a.scales;
  } else if (!a.scale_range.empty()) {
    if (a.scale_range.size() != 3) throw Error(ErrorCode::InvalidConfig, "--scale-range takes lo,hi,count");
    const double count = a.scale_range[2];
    if (!(count >= 1.0) || count != std::floor(count)) {
      throw Error(ErrorCode::InvalidConfig, "--scale-range count must be a positive integer");
    }
    if (!(a.scale_range[0] > 0.0) || !(a.scale_range[1] > 0.0)) {
      throw Error(ErrorCode::InvalidConfig, "source scales must be positive");
    }
    config.scale_grid = log_scale_grid(a.scale_range[0], a.scale_range[1], static_cast<std::size_t>(count));
  }
  config.validate();

  const SweepSummary summary = run_sweep(config);
  std::ostringstream payload;
  if (a.format == "json") {
    write_sweep_json(payload, summary);
  } else {
    write_sweep_csv(payload, summary);
  }
  emit(a.out, payload.str(), out);
  return kOk;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.sensors != 4 && a.sensors != 5) {
    throw Error(ErrorCode::InvalidConfig, "--sensors must be 4 or 5, got " + std::to_string(a.sensors));
  }
  if (!(a.scale > 0.0) || !std::isfinite(a.scale)) throw Error(ErrorCode::InvalidConfig, "--scale must be positive");
  std::mt19937_64 rng(instance_seed(a.seed, 0, 0));
  emit(a.out, format_scenario(sample_scenario(rng, a.sensors, a.scale)), out);
  return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return kUsage;
    case ErrorCode::ParseError: return kParseError;
    case ErrorCode::SingularMatrix: return kSingularMatrix;
    case ErrorCode::NoRealSolution: return kNoRealSolution;
    default: return kSolverError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form TDOA source localization for 4- and 5-sensor arrays"};
  app.name("tdoa");
  app.require_subcommand(1);

  LocateArgs locate;
  CLI::App* locate_cmd = app.add_subcommand("locate", "Localize the source described by a scenario file");
  locate_cmd->add_option("scenario", locate.input, "Scenario file (JSON)")->required();
  locate_cmd->add_option("--format", locate.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  locate_cmd->add_option("--out", locate.out, "Output path (default stdout)");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo success-fraction sweep over source scales");
  sweep_cmd->add_option("--sensors", sweep.sensors, "Sensor count (4 or 5)");
  sweep_cmd->add_option("--instances", sweep.instances, "Monte Carlo instances per scale");
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
  auto* scales_opt = sweep_cmd->add_option("--scales", sweep.scales, "Explicit source scales a,b,...")->delimiter(',');
  sweep_cmd->add_option("--scale-range", sweep.scale_range, "Log-spaced scales lo,hi,count")
      ->delimiter(',')
      ->excludes(scales_opt);
  sweep_cmd->add_option("--thresholds", sweep.thresholds, "Relative-error thresholds t1,t2,...")->delimiter(',');
  sweep_cmd->add_option("--format", sweep.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", sweep.out, "Output path (default stdout)");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Draw a random scenario with a truth source");
  gen_cmd->add_option("--sensors", gen.sensors, "Sensor count (4 or 5)");
  gen_cmd->add_option("--scale", gen.scale, "Source scale relative to the sensor cube");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

  // CLI11 consumes arguments from the back.
  std::vector<std::string> rest(args.empty() ? args.end() : args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*locate_cmd) return cmd_locate(locate, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out);
    return cmd_gen(gen, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace tdoa::cli
