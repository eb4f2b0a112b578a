#include "qplift_cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qplift_cli/errors.hpp"

namespace qplift_cli {

namespace {

using nlohmann::json;

bool matrix_equal(const qplift::Matrix& a, const qplift::Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.rows() == 0 || a.cwiseEqual(b).all());
}

[[noreturn]] void invalid(const std::string& message) {
  throw CliError(ErrorCategory::config_validation, message);
}

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) invalid(where + ": expected a number");
  return j.get<double>();
}

qplift::Complex complex_at(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  invalid(where + ": expected a number or [re, im] pair");
}

qplift::Matrix matrix_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) invalid(where + ": expected a nonempty array of rows");
  int rows = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty()) invalid(where + ": rows must be nonempty arrays");
  int cols = static_cast<int>(j[0].size());
  qplift::Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      invalid(where + ": rows must all have " + std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = complex_at(j[r][c], where + "[" + std::to_string(r) + "][" +
                                        std::to_string(c) + "]");
    }
  }
  return m;
}

json matrix_to_json(const qplift::Matrix& m);

std::string string_at(const json& j, const std::string& where) {
  if (!j.is_string()) invalid(where + ": expected a string");
  return j.get<std::string>();
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      invalid(where + ": unknown key '" + key + "'");
    }
  }
}

SweepSpec parse_sweep(const json& j) {
  if (!j.is_object()) invalid("sweep: expected an object");
  check_keys(j, "sweep", {"parameter", "from", "to", "steps", "scale"});
  SweepSpec s;
  if (!j.contains("parameter")) invalid("sweep: missing 'parameter'");
  s.parameter = string_at(j["parameter"], "sweep.parameter");
  if (!j.contains("from") || !j.contains("to")) invalid("sweep: missing 'from'/'to'");
  s.from = number_at(j["from"], "sweep.from");
  s.to = number_at(j["to"], "sweep.to");
  if (!j.contains("steps")) invalid("sweep: missing 'steps'");
  if (!j["steps"].is_number_integer()) invalid("sweep.steps: expected an integer");
  s.steps = j["steps"].get<int>();
  if (s.steps < 1) invalid("sweep.steps: must be >= 1");
  if (j.contains("scale")) {
    std::string scale = string_at(j["scale"], "sweep.scale");
    if (scale == "log") {
      s.log_scale = true;
    } else if (scale != "linear") {
      invalid("sweep.scale: expected 'linear' or 'log'");
    }
  }
  if (s.log_scale && (s.from <= 0.0 || s.to <= 0.0)) {
    invalid("sweep: log scale requires positive endpoints");
  }
  return s;
}

OutputOptions parse_output(const json& j) {
  if (!j.is_object()) invalid("output: expected an object");
  check_keys(j, "output", {"format", "path"});
  OutputOptions o;
  if (j.contains("format")) {
    o.format = string_at(j["format"], "output.format");
    if (o.format != "table" && o.format != "csv" && o.format != "json") {
      invalid("output.format: expected 'table', 'csv', or 'json'");
    }
  }
  if (j.contains("path")) o.path = string_at(j["path"], "output.path");
  return o;
}

BayesOptions parse_bayes(const json& j) {
  if (!j.is_object()) invalid("bayes: expected an object");
  check_keys(j, "bayes", {"family", "sigma_weight", "angle", "observed"});
  BayesOptions b;
  if (j.contains("family")) {
    b.family = string_at(j["family"], "bayes.family");
    if (b.family != "identity" && b.family != "mind_swap" &&
        b.family != "controlled_rotation") {
      invalid("bayes.family: expected 'identity', 'mind_swap', or 'controlled_rotation'");
    }
  }
  if (j.contains("sigma_weight")) {
    b.sigma_weight = number_at(j["sigma_weight"], "bayes.sigma_weight");
    if (b.sigma_weight < 0.0 || b.sigma_weight > 1.0) {
      invalid("bayes.sigma_weight: must lie in [0, 1]");
    }
  }
  if (j.contains("angle")) b.angle = number_at(j["angle"], "bayes.angle");
  if (j.contains("observed")) {
    b.observed = string_at(j["observed"], "bayes.observed");
    if (b.observed != "C" && b.observed != "D") {
      invalid("bayes.observed: expected 'C' or 'D'");
    }
  }
  return b;
}

EventSystemSpec parse_events(const json& j, const std::string& where) {
  if (!j.is_object()) invalid(where + ": expected an object");
  check_keys(j, where, {"labels", "effects"});
  if (!j.contains("labels") || !j.contains("effects")) {
    invalid(where + ": missing 'labels' or 'effects'");
  }
  EventSystemSpec spec;
  if (!j["labels"].is_array() || j["labels"].empty()) {
    invalid(where + ".labels: expected a nonempty array of strings");
  }
  for (std::size_t i = 0; i < j["labels"].size(); ++i) {
    spec.labels.push_back(
        string_at(j["labels"][i], where + ".labels[" + std::to_string(i) + "]"));
  }
  if (!j["effects"].is_array() || j["effects"].size() != spec.labels.size()) {
    invalid(where + ".effects: expected one matrix per label");
  }
  for (std::size_t i = 0; i < j["effects"].size(); ++i) {
    spec.effects.push_back(
        matrix_at(j["effects"][i], where + ".effects[" + std::to_string(i) + "]"));
  }
  return spec;
}

CustomSpec parse_custom(const json& j) {
  if (!j.is_object()) invalid("custom: expected an object");
  check_keys(j, "custom", {"initial", "kraus", "events_factor1", "events_factor2"});
  for (const char* key : {"initial", "kraus", "events_factor1", "events_factor2"}) {
    if (!j.contains(key)) invalid(std::string("custom: missing '") + key + "'");
  }
  CustomSpec spec;
  spec.initial = matrix_at(j["initial"], "custom.initial");
  if (!j["kraus"].is_array() || j["kraus"].empty()) {
    invalid("custom.kraus: expected a nonempty array of matrices");
  }
  for (std::size_t i = 0; i < j["kraus"].size(); ++i) {
    spec.kraus.push_back(
        matrix_at(j["kraus"][i], "custom.kraus[" + std::to_string(i) + "]"));
  }
  spec.events_factor1 = parse_events(j["events_factor1"], "custom.events_factor1");
  spec.events_factor2 = parse_events(j["events_factor2"], "custom.events_factor2");
  return spec;
}

json complex_to_json(qplift::Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const qplift::Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json events_to_json(const EventSystemSpec& spec) {
  json effects = json::array();
  for (const auto& e : spec.effects) effects.push_back(matrix_to_json(e));
  return json{{"labels", spec.labels}, {"effects", std::move(effects)}};
}

}  // namespace

bool EventSystemSpec::operator==(const EventSystemSpec& other) const {
  if (labels != other.labels || effects.size() != other.effects.size()) return false;
  for (std::size_t i = 0; i < effects.size(); ++i) {
    if (!matrix_equal(effects[i], other.effects[i])) return false;
  }
  return true;
}

bool CustomSpec::operator==(const CustomSpec& other) const {
  if (!matrix_equal(initial, other.initial) || kraus.size() != other.kraus.size()) {
    return false;
  }
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (!matrix_equal(kraus[i], other.kraus[i])) return false;
  }
  return events_factor1 == other.events_factor1 &&
         events_factor2 == other.events_factor2;
}

ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError(ErrorCategory::config_parse,
                   "line " + std::to_string(line_of_offset(text, e.byte)) + ": " +
                       e.what());
  }
  if (!root.is_object()) invalid("config: expected a JSON object");
  check_keys(root, "config",
             {"scenario", "parameters", "bayes", "custom", "sweep", "output"});

  ScenarioConfig config;
  if (!root.contains("scenario")) invalid("config: missing 'scenario'");
  config.kind = string_at(root["scenario"], "scenario");
  if (config.kind != "tongue" && config.kind != "lactose" &&
      config.kind != "bayes" && config.kind != "custom-lifting") {
    invalid("scenario: unknown kind '" + config.kind + "'");
  }

  if (root.contains("parameters")) {
    if (!root["parameters"].is_object()) invalid("parameters: expected an object");
    for (const auto& [key, value] : root["parameters"].items()) {
      config.parameters[key] = complex_at(value, "parameters." + key);
    }
  }
  if (root.contains("bayes")) {
    if (config.kind != "bayes") invalid("bayes: only valid for the bayes scenario");
    config.bayes = parse_bayes(root["bayes"]);
  }
  if (root.contains("custom")) {
    if (config.kind != "custom-lifting") {
      invalid("custom: only valid for the custom-lifting scenario");
    }
    config.custom = parse_custom(root["custom"]);
  }
  if (config.kind == "custom-lifting" && !config.custom) {
    invalid("custom-lifting: missing the 'custom' block");
  }
  if (root.contains("sweep")) config.sweep = parse_sweep(root["sweep"]);
  if (root.contains("output")) config.output = parse_output(root["output"]);
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CliError(ErrorCategory::config_io, "cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string emit_config(const ScenarioConfig& config) {
  json root;
  root["scenario"] = config.kind;
  if (!config.parameters.empty()) {
    json params = json::object();
    for (const auto& [key, value] : config.parameters) {
      params[key] = complex_to_json(value);
    }
    root["parameters"] = std::move(params);
  }
  if (config.bayes) {
    root["bayes"] = json{{"family", config.bayes->family},
                         {"sigma_weight", config.bayes->sigma_weight},
                         {"angle", config.bayes->angle},
                         {"observed", config.bayes->observed}};
  }
  if (config.custom) {
    root["custom"] = json{{"initial", matrix_to_json(config.custom->initial)},
                          {"kraus", json::array()},
                          {"events_factor1", events_to_json(config.custom->events_factor1)},
                          {"events_factor2", events_to_json(config.custom->events_factor2)}};
    for (const auto& k : config.custom->kraus) {
      root["custom"]["kraus"].push_back(matrix_to_json(k));
    }
  }
  if (config.sweep) {
    root["sweep"] = json{{"parameter", config.sweep->parameter},
                         {"from", config.sweep->from},
                         {"to", config.sweep->to},
                         {"steps", config.sweep->steps},
                         {"scale", config.sweep->log_scale ? "log" : "linear"}};
  }
  json output = json::object();
  if (!config.output.format.empty()) output["format"] = config.output.format;
  if (!config.output.path.empty()) output["path"] = config.output.path;
  if (!output.empty()) root["output"] = std::move(output);
  return root.dump(2) + "\n";
}

}  // namespace qplift_cli
