#pragma once

#include <string>
#include <vector>

#include <qplift/report.hpp>

namespace qplift_cli {

/// 12-significant-digit rendering used by every emitter.
std::string format_number(double v);

std::string emit_table(const std::vector<qplift::ScenarioReport>& reports);

/// RFC-4180-style; header always present. Columns in first-appearance order:
/// scenario, attributes, parameters, probabilities, lhs, rhs, gap,
/// diagnostics, fitted, then warnings when any report carries one.
std::string emit_csv(const std::vector<qplift::ScenarioReport>& reports);

std::string emit_json(const std::vector<qplift::ScenarioReport>& reports);

/// format is "table", "csv", or "json".
std::string emit_report(const std::vector<qplift::ScenarioReport>& reports,
                        const std::string& format);

}  // namespace qplift_cli
