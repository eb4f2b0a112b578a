#include "qplift_cli/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qplift_cli/errors.hpp"

namespace qplift_cli {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_section(std::ostringstream& out, const char* title,
                  const std::vector<std::pair<std::string, double>>& entries) {
  if (entries.empty()) return;
  out << title << ":\n";
  for (const auto& [name, value] : entries) {
    out << "  " << name << " = " << format_number(value) << "\n";
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string emit_table(const std::vector<qplift::ScenarioReport>& reports) {
  std::ostringstream out;
  bool first = true;
  for (const auto& r : reports) {
    if (!first) out << "\n";
    first = false;
    out << "scenario: " << r.scenario << "\n";
    if (!r.attributes.empty()) {
      out << "attributes:\n";
      for (const auto& [name, value] : r.attributes) {
        out << "  " << name << " = " << value << "\n";
      }
    }
    emit_section(out, "parameters", r.parameters);
    emit_section(out, "probabilities", r.probabilities);
    emit_section(out, "diagnostics", r.diagnostics);
    emit_section(out, "fitted", r.fitted);
    out << "law: lhs = " << format_number(r.lhs) << "  rhs = " << format_number(r.rhs)
        << "  gap = " << format_number(r.gap) << "\n";
    if (!r.warnings.empty()) {
      out << "warnings:\n";
      for (const auto& w : r.warnings) out << "  - " << w << "\n";
    }
  }
  return out.str();
}

std::string emit_csv(const std::vector<qplift::ScenarioReport>& reports) {
  // Column set is the first-appearance union across reports so that sweep
  // rows (identical schemas) line up and mixed lists stay readable.
  std::vector<std::string> attr_cols, num_cols;
  bool any_warnings = false;
  auto add_col = [](std::vector<std::string>& cols, const std::string& name) {
    if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
  };
  for (const auto& r : reports) {
    for (const auto& [name, value] : r.attributes) add_col(attr_cols, name);
    for (const auto& [name, value] : r.parameters) add_col(num_cols, name);
    for (const auto& [name, value] : r.probabilities) add_col(num_cols, name);
    any_warnings = any_warnings || !r.warnings.empty();
  }
  std::vector<std::string> tail_cols;
  for (const auto& r : reports) {
    for (const auto& [name, value] : r.diagnostics) add_col(tail_cols, name);
    for (const auto& [name, value] : r.fitted) add_col(tail_cols, name);
  }

  std::ostringstream out;
  out << "scenario";
  for (const auto& c : attr_cols) out << "," << csv_escape(c);
  for (const auto& c : num_cols) out << "," << csv_escape(c);
  out << ",lhs,rhs,gap";
  for (const auto& c : tail_cols) out << "," << csv_escape(c);
  if (any_warnings) out << ",warnings";
  out << "\n";

  for (const auto& r : reports) {
    std::map<std::string, std::string> attrs(r.attributes.begin(), r.attributes.end());
    std::map<std::string, double> nums;
    for (const auto& [name, value] : r.parameters) nums[name] = value;
    for (const auto& [name, value] : r.probabilities) nums[name] = value;
    std::map<std::string, double> tails;
    for (const auto& [name, value] : r.diagnostics) tails[name] = value;
    for (const auto& [name, value] : r.fitted) tails[name] = value;

    out << csv_escape(r.scenario);
    for (const auto& c : attr_cols) {
      auto it = attrs.find(c);
      out << "," << (it == attrs.end() ? "" : csv_escape(it->second));
    }
    for (const auto& c : num_cols) {
      auto it = nums.find(c);
      out << "," << (it == nums.end() ? "" : format_number(it->second));
    }
    out << "," << format_number(r.lhs) << "," << format_number(r.rhs) << ","
        << format_number(r.gap);
    for (const auto& c : tail_cols) {
      auto it = tails.find(c);
      out << "," << (it == tails.end() ? "" : format_number(it->second));
    }
    if (any_warnings) {
      std::string joined;
      for (const auto& w : r.warnings) {
        if (!joined.empty()) joined += "; ";
        joined += w;
      }
      out << "," << csv_escape(joined);
    }
    out << "\n";
  }
  return out.str();
}

std::string emit_json(const std::vector<qplift::ScenarioReport>& reports) {
  using ordered = nlohmann::ordered_json;
  ordered root = ordered::array();
  for (const auto& r : reports) {
    ordered item;
    item["scenario"] = r.scenario;
    auto pairs_to_object = [](const auto& entries) {
      ordered obj = ordered::object();
      for (const auto& [name, value] : entries) obj[name] = value;
      return obj;
    };
    if (!r.attributes.empty()) item["attributes"] = pairs_to_object(r.attributes);
    if (!r.parameters.empty()) item["parameters"] = pairs_to_object(r.parameters);
    if (!r.probabilities.empty()) {
      item["probabilities"] = pairs_to_object(r.probabilities);
    }
    if (!r.diagnostics.empty()) item["diagnostics"] = pairs_to_object(r.diagnostics);
    item["lhs"] = r.lhs;
    item["rhs"] = r.rhs;
    item["gap"] = r.gap;
    if (!r.fitted.empty()) item["fitted"] = pairs_to_object(r.fitted);
    if (!r.warnings.empty()) item["warnings"] = r.warnings;
    root.push_back(std::move(item));
  }
  return root.dump(2) + "\n";
}

std::string emit_report(const std::vector<qplift::ScenarioReport>& reports,
                        const std::string& format) {
  if (format == "table") return emit_table(reports);
  if (format == "csv") return emit_csv(reports);
  if (format == "json") return emit_json(reports);
  throw CliError(ErrorCategory::usage,
                 "unknown format '" + format + "' (expected table, csv, or json)");
}

}  // namespace qplift_cli
