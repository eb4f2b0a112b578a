#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <qplift/operator.hpp>

namespace qplift_cli {

struct SweepSpec {
  std::string parameter;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
  bool log_scale = false;

  bool operator==(const SweepSpec&) const = default;
};

struct OutputOptions {
  std::string format;  // "table" | "csv" | "json"; empty means unspecified
  std::string path;    // empty means stdout

  bool operator==(const OutputOptions&) const = default;
};

/// Bias family selection for the bayes scenario; the isometry itself comes
/// from the family library, not the config.
struct BayesOptions {
  std::string family = "identity";  // identity | mind_swap | controlled_rotation
  double sigma_weight = 0.0;        // weight of the biased branch of sigma
  double angle = 0.0;               // controlled_rotation only
  std::string observed = "C";      // "C" | "D"

  bool operator==(const BayesOptions&) const = default;
};

struct EventSystemSpec {
  std::vector<std::string> labels;
  std::vector<qplift::Matrix> effects;

  bool operator==(const EventSystemSpec& other) const;
};

/// custom-lifting inputs: a compound lifting built from an explicit Kraus
/// channel, applied to an explicit initial state, read by two event systems.
struct CustomSpec {
  qplift::Matrix initial;
  std::vector<qplift::Matrix> kraus;
  EventSystemSpec events_factor1;  // on the input (nondemolition) factor
  EventSystemSpec events_factor2;  // on the channel-output factor

  bool operator==(const CustomSpec& other) const;
};

struct ScenarioConfig {
  std::string kind;  // tongue | lactose | bayes | custom-lifting
  std::map<std::string, qplift::Complex> parameters;
  std::optional<BayesOptions> bayes;
  std::optional<CustomSpec> custom;
  std::optional<SweepSpec> sweep;
  OutputOptions output;

  bool operator==(const ScenarioConfig&) const = default;
};

/// JSON object syntax; complex values as [re, im] pairs. Throws CliError
/// with category config_parse (malformed text, with line position) or
/// config_validation (well-formed but wrong shape or unknown kind).
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses; unreadable files raise category config_io.
ScenarioConfig load_config_file(const std::string& path);

/// Canonical JSON echo; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

}  // namespace qplift_cli
