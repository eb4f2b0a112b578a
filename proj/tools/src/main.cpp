#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qplift_cli/config.hpp"
#include "qplift_cli/errors.hpp"
#include "qplift_cli/report_io.hpp"
#include "qplift_cli/runner.hpp"

namespace {

using qplift_cli::CliError;
using qplift_cli::ErrorCategory;

std::string pick_format(const std::string& flag,
                        const qplift_cli::OutputOptions& from_config) {
  if (!flag.empty()) return flag;
  if (!from_config.format.empty()) return from_config.format;
  return "table";
}

void deliver(const std::string& text, const std::string& flag_path,
             const qplift_cli::OutputOptions& from_config) {
  std::string path = !flag_path.empty() ? flag_path : from_config.path;
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CliError(ErrorCategory::output_io,
                   "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out.good())
    throw CliError(ErrorCategory::output_io, "failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contextual adaptive-probability scenarios: liftings, joint-like "
               "tables, total-probability gaps"};
  app.require_subcommand(1);

  std::string format;
  std::string out_path;
  std::string config_path;
  std::uint64_t seed = 42;
  double target = 0.0;

  app.add_option("--format", format, "Output format: table, csv, or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--out", out_path,
                 "Write the report to this file instead of stdout");
  app.add_option("--seed", seed,
                 "Seed for the check subcommand's randomized suites");

  CLI::App* run_cmd =
      app.add_subcommand("run", "Evaluate a scenario config (sweep-aware)");
  run_cmd->add_option("config", config_path, "Path to a JSON scenario config")
      ->required();
  run_cmd->fallthrough();

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate a config over its declared parameter grid");
  sweep_cmd->add_option("config", config_path, "Path to a JSON scenario config")
      ->required();
  sweep_cmd->fallthrough();

  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "Fit the lactose preference ratio to a target activation rate");
  fit_cmd->add_option("config", config_path, "Path to a JSON scenario config")
      ->required();
  fit_cmd
      ->add_option("--target", target,
                   "Activation probability the fitted ratio must reproduce")
      ->required();
  fit_cmd->fallthrough();

  CLI::App* check_cmd =
      app.add_subcommand("check", "Run the seeded invariant self-checks");
  check_cmd->fallthrough();

  CLI::App* demo_cmd = app.add_subcommand(
      "demo", "Print the three built-in case studies with canonical inputs");
  demo_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << "\n";
    return qplift_cli::category_exit_code(ErrorCategory::usage);
  }

  try {
    if (*run_cmd) {
      qplift_cli::ScenarioConfig config = qplift_cli::load_config_file(config_path);
      std::vector<qplift::ScenarioReport> reports = qplift_cli::run(config);
      deliver(qplift_cli::emit_report(reports, pick_format(format, config.output)),
              out_path, config.output);
    } else if (*sweep_cmd) {
      qplift_cli::ScenarioConfig config = qplift_cli::load_config_file(config_path);
      if (!config.sweep)
        throw CliError(ErrorCategory::config_validation,
                       "sweep: config has no sweep block");
      std::vector<qplift::ScenarioReport> reports = qplift_cli::run(config);
      deliver(qplift_cli::emit_report(reports, pick_format(format, config.output)),
              out_path, config.output);
    } else if (*fit_cmd) {
      qplift_cli::ScenarioConfig config = qplift_cli::load_config_file(config_path);
      std::vector<qplift::ScenarioReport> reports = {
          qplift_cli::run_fit(config, target)};
      deliver(qplift_cli::emit_report(reports, pick_format(format, config.output)),
              out_path, config.output);
    } else if (*check_cmd) {
      qplift_cli::CheckOutcome outcome = qplift_cli::run_check(seed);
      deliver(outcome.text, out_path, {});
      if (outcome.failed > 0) {
        std::cerr << "error: internal: " << outcome.failed << " of "
                  << outcome.total << " self-check suites failed\n";
        return qplift_cli::category_exit_code(ErrorCategory::internal);
      }
    } else if (*demo_cmd) {
      std::string text = (format == "csv" || format == "json")
                             ? qplift_cli::emit_report(qplift_cli::demo_reports(), format)
                             : qplift_cli::demo_text();
      deliver(text, out_path, {});
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << qplift_cli::category_name(e.category()) << ": "
              << e.what() << "\n";
    return qplift_cli::category_exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return qplift_cli::category_exit_code(ErrorCategory::internal);
  }
  return 0;
}
