#include "tdoa/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tdoa/error.hpp"

namespace tdoa {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Vec3 to_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) parse_fail(what + " must be an [x, y, z] array");
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) parse_fail(what + " has a non-numeric coordinate");
    v[i] = j[i].get<double>();
  }
  return v;
}

std::vector<double> to_numbers(const json& j, const std::string& what) {
  if (!j.is_array()) parse_fail(what + " must be an array of numbers");
  std::vector<double> out;
  for (const json& e : j) {
    if (!e.is_number()) parse_fail(what + " has a non-numeric entry");
    out.push_back(e.get<double>());
  }
  return out;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    parse_fail("sweep CSV line " + std::to_string(line_no) + ": bad field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("scenario file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("scenario file must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key != "sensors" && key != "source" && key != "deltas" && key != "times" && key != "c") {
      parse_fail("unknown scenario key '" + key + "'");
    }
  }

  ScenarioFile file;
  if (!doc.contains("sensors") || !doc["sensors"].is_array()) parse_fail("scenario needs a 'sensors' array");
  for (std::size_t i = 0; i < doc["sensors"].size(); ++i) {
    file.sensors.push_back(to_vec3(doc["sensors"][i], "sensor " + std::to_string(i + 1)));
  }
  if (file.sensors.size() != 4 && file.sensors.size() != 5) {
    parse_fail("scenario must list 4 or 5 sensors, found " + std::to_string(file.sensors.size()));
  }

  if (doc.contains("source")) file.source = to_vec3(doc["source"], "source");
  if (doc.contains("deltas")) {
    file.deltas = to_numbers(doc["deltas"], "deltas");
    if (file.deltas->size() != file.sensors.size() - 1) {
      parse_fail("expected " + std::to_string(file.sensors.size() - 1) + " deltas, found " +
                 std::to_string(file.deltas->size()));
    }
  }
  if (doc.contains("times")) {
    file.times = to_numbers(doc["times"], "times");
    if (file.times->size() != file.sensors.size()) {
      parse_fail("expected " + std::to_string(file.sensors.size()) + " arrival times, found " +
                 std::to_string(file.times->size()));
    }
  }
  if (doc.contains("c")) {
    if (!doc["c"].is_number() || !(doc["c"].get<double>() > 0.0)) parse_fail("'c' must be a positive number");
    file.c = doc["c"].get<double>();
  }

  const int present = int(file.source.has_value()) + int(file.deltas.has_value()) + int(file.times.has_value());
  if (present != 1) parse_fail("scenario needs exactly one of 'source', 'deltas' or 'times'");
  return file;
}

std::string format_scenario(const Scenario& scenario) {
  // One compact array per line keeps generated files easy to read and diff.
  std::ostringstream os;
  os << "{\n  \"sensors\": [\n";
  const auto positions = scenario.sensors.positions();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    os << "    " << vec_json(positions[i]).dump() << (i + 1 < positions.size() ? ",\n" : "\n");
  }
  os << "  ],\n  \"source\": " << vec_json(scenario.source).dump() << "\n}\n";
  return os.str();
}

LocalizationInput to_localization_input(const ScenarioFile& file) {
  SensorArray sensors(file.sensors);
  if (file.source) {
    Scenario scenario(sensors, *file.source);
    return {sensors, range_differences(scenario), file.source};
  }
  if (file.times) {
    std::vector<double> deltas;
    for (std::size_t k = 1; k < file.times->size(); ++k) {
      deltas.push_back(tdoa_to_range_diff((*file.times)[k] - (*file.times)[0], file.c));
    }
    return {sensors, RangeDifferences(std::move(deltas)), std::nullopt};
  }
  return {sensors, RangeDifferences(*file.deltas), std::nullopt};
}

std::string format_report_text(const LocalizationResult& result, const std::optional<Vec3>& truth) {
  std::ostringstream os;
  auto vec = [](const Vec3& v) { return fmt_double(v.x) + " " + fmt_double(v.y) + " " + fmt_double(v.z); };
  os << "method: " << to_string(result.method) << "\n";
  os << "position: " << vec(result.position) << "\n";
  if (truth) {
    const double rel = distance(result.position, *truth) / norm(*truth);
    os << "relative_error: " << fmt_double(rel) << "\n";
  }
  if (result.method == Method::FourSensor) {
    os << "ambiguity_resolved_by: " << to_string(result.resolved_by) << (result.ambiguous ? " (tie)" : "") << "\n";
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
      const Candidate& c = result.candidates[i];
      os << "candidate " << i + 1 << (i == result.selected ? " [selected]" : "") << ": rho1 " << fmt_double(c.rho1)
         << " position " << vec(c.position) << " residual " << fmt_double(c.residual) << "\n";
    }
    os << "discriminant: " << fmt_double(result.diagnostics.discriminant)
       << (result.diagnostics.linear_fallback ? " (linear fallback)" : "") << "\n";
  } else {
    const Pairing& p = result.diagnostics.pairing;
    os << "pairing:";
    for (std::size_t i = 0; i < 3; ++i) {
      os << " (" << p[i].k + 1 << "," << p[i].j + 1 << ")" << (result.diagnostics.cleared_rows[i] ? "*" : "");
    }
    os << "\n";
  }
  os << "pivots: min " << fmt_double(result.diagnostics.pivots.min_relative_pivot) << " max "
     << fmt_double(result.diagnostics.pivots.max_relative_pivot) << "\n";
  return os.str();
}

std::string format_report_json(const LocalizationResult& result, const std::optional<Vec3>& truth) {
  json doc;
  doc["method"] = std::string(to_string(result.method));
  doc["position"] = vec_json(result.position);
  if (truth) doc["relative_error"] = distance(result.position, *truth) / norm(*truth);
  doc["ambiguity_resolved_by"] = std::string(to_string(result.resolved_by));
  doc["ambiguous"] = result.ambiguous;
  doc["candidates"] = json::array();
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const Candidate& c = result.candidates[i];
    doc["candidates"].push_back({{"rho1", c.rho1},
                                 {"position", vec_json(c.position)},
                                 {"residual", c.residual},
                                 {"selected", i == result.selected}});
  }
  json diag;
  diag["min_relative_pivot"] = result.diagnostics.pivots.min_relative_pivot;
  diag["max_relative_pivot"] = result.diagnostics.pivots.max_relative_pivot;
  if (result.method == Method::FiveSensor) {
    diag["pairing"] = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      const SensorPair& p = result.diagnostics.pairing[i];
      diag["pairing"].push_back({{"k", p.k + 1}, {"j", p.j + 1}, {"cleared", result.diagnostics.cleared_rows[i]}});
    }
    diag["pairing_attempts"] = result.diagnostics.pairing_attempts;
  } else {
    diag["discriminant"] = result.diagnostics.discriminant;
    diag["linear_fallback"] = result.diagnostics.linear_fallback;
  }
  doc["diagnostics"] = diag;
  return doc.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, const SweepSummary& summary) {
  os << kSweepCsvHeader << "\n";
  for (const SweepCell& c : summary.cells) {
    os << c.n_sensors << ',' << fmt_double(c.source_scale) << ',' << fmt_double(c.threshold) << ','
       << fmt_double(c.success_fraction()) << ',' << c.n_singular << ',' << c.n_wrong_root << ',' << c.n_numerical
       << ',' << c.n_instances << "\n";
  }
}

SweepSummary read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSweepCsvHeader) parse_fail("sweep CSV header mismatch");

  SweepSummary summary;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 8) parse_fail("sweep CSV line " + std::to_string(line_no) + ": expected 8 fields");

    SweepCell c;
    c.n_sensors = parse_field<int>(fields[0], line_no);
    c.source_scale = parse_field<double>(fields[1], line_no);
    c.threshold = parse_field<double>(fields[2], line_no);
    const double fraction = parse_field<double>(fields[3], line_no);
    c.n_singular = parse_field<std::size_t>(fields[4], line_no);
    c.n_wrong_root = parse_field<std::size_t>(fields[5], line_no);
    c.n_numerical = parse_field<std::size_t>(fields[6], line_no);
    c.n_instances = parse_field<std::size_t>(fields[7], line_no);
    const std::size_t failures = c.n_singular + c.n_wrong_root + c.n_numerical;
    if (failures > c.n_instances) parse_fail("sweep CSV line " + std::to_string(line_no) + ": counts exceed total");
    c.n_success = c.n_instances - failures;
    if (c.success_fraction() != fraction) {
      parse_fail("sweep CSV line " + std::to_string(line_no) + ": success_fraction disagrees with counts");
    }
    summary.cells.push_back(c);
  }
  return summary;
}

void write_sweep_json(std::ostream& os, const SweepSummary& summary) {
  json doc = json::array();
  for (const SweepCell& c : summary.cells) {
    doc.push_back({{"n_sensors", c.n_sensors},
                   {"source_scale", c.source_scale},
                   {"threshold", c.threshold},
                   {"success_fraction", c.success_fraction()},
                   {"n_success", c.n_success},
                   {"n_singular", c.n_singular},
                   {"n_wrong_root", c.n_wrong_root},
                   {"n_numerical", c.n_numerical},
                   {"n_instances", c.n_instances}});
  }
  os << doc.dump(2) << "\n";
}

}  // namespace tdoa
