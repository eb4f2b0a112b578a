#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include <qplift/case_studies.hpp>
#include <qplift/report.hpp>

#include "qplift_cli/config.hpp"
#include "qplift_cli/errors.hpp"
#include "qplift_cli/report_io.hpp"
#include "qplift_cli/runner.hpp"

using namespace qplift_cli;
using qplift::Complex;
using qplift::ScenarioReport;

namespace {

ErrorCategory category_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const CliError& e) {
    return e.category();
  }
  FAIL("expected the config to be rejected");
  return ErrorCategory::internal;
}

}  // namespace

TEST_CASE("config parse round-trips through emit") {
  ScenarioConfig config;
  config.kind = "lactose";
  config.parameters["p_L"] = Complex{0.8, 0.0};
  config.parameters["p_plus_L"] = Complex{0.97, 0.0};
  config.parameters["p_plus_G"] = Complex{0.011, 0.0};
  config.parameters["k_L"] = Complex{0.5, -0.25};
  SweepSpec sweep;
  sweep.parameter = "p_L";
  sweep.from = 0.1;
  sweep.to = 0.9;
  sweep.steps = 5;
  sweep.log_scale = false;
  config.sweep = sweep;
  config.output.format = "csv";
  config.output.path = "out.csv";

  ScenarioConfig parsed = parse_config(emit_config(config));
  CHECK(parsed == config);
  // A second pass is exactly stable.
  CHECK(emit_config(parsed) == emit_config(config));
}

TEST_CASE("config parsing accepts numbers and [re, im] pairs") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "tongue",
    "parameters": {"lambda1": [0.6, 0.3], "lambda2": 0.74,
                   "mu1": 0.9, "mu2": [0.0, -0.435]}
  })");
  CHECK(c.kind == "tongue");
  CHECK(c.parameters.at("lambda1") == Complex{0.6, 0.3});
  CHECK(c.parameters.at("lambda2") == Complex{0.74, 0.0});
  CHECK(c.parameters.at("mu2") == Complex{0.0, -0.435});
  CHECK_FALSE(c.sweep.has_value());
  CHECK(c.output.format.empty());
}

TEST_CASE("bayes options parse with defaults") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "bayes",
    "parameters": {"p_A": 0.5, "p_C_given_A": 0.8, "p_C_given_B": 0.4},
    "bayes": {"family": "mind_swap", "sigma_weight": 0.3}
  })");
  REQUIRE(c.bayes.has_value());
  CHECK(c.bayes->family == "mind_swap");
  CHECK(c.bayes->sigma_weight == 0.3);
  CHECK(c.bayes->observed == "C");

  ScenarioConfig round = parse_config(emit_config(c));
  CHECK(round == c);
}

TEST_CASE("custom specs parse matrices and event systems") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "custom-lifting",
    "custom": {
      "initial": [[0.5, [0, -0.5]], [[0, 0.5], 0.5]],
      "kraus": [[[1, 0], [0, 0.8]], [[0, 0.6], [0, 0]]],
      "events_factor1": {"labels": ["up", "down"],
                         "effects": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]},
      "events_factor2": {"labels": ["stay", "decay"],
                         "effects": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}
    }
  })");
  REQUIRE(c.custom.has_value());
  CHECK(c.custom->initial.rows() == 2);
  CHECK(c.custom->initial(0, 1) == Complex{0.0, -0.5});
  CHECK(c.custom->kraus.size() == 2);
  CHECK(c.custom->events_factor1.labels ==
        std::vector<std::string>{"up", "down"});
  CHECK(parse_config(emit_config(c)) == c);
}

TEST_CASE("config rejection carries the right category") {
  CHECK(category_of("{ not json") == ErrorCategory::config_parse);
  CHECK(category_of(R"("just a string")") == ErrorCategory::config_validation);
  CHECK(category_of(R"({"parameters": {}})") == ErrorCategory::config_validation);
  CHECK(category_of(R"({"scenario": "unknown-kind"})") ==
        ErrorCategory::config_validation);
  CHECK(category_of(R"({"scenario": "tongue", "unexpected": 1})") ==
        ErrorCategory::config_validation);
  CHECK(category_of(R"({"scenario": "tongue", "parameters": {"x": "str"}})") ==
        ErrorCategory::config_validation);
  // The bayes block belongs to the bayes scenario only.
  CHECK(category_of(R"({"scenario": "tongue", "bayes": {}})") ==
        ErrorCategory::config_validation);
  // custom-lifting requires its spec block.
  CHECK(category_of(R"({"scenario": "custom-lifting"})") ==
        ErrorCategory::config_validation);
  // Sweeps need positive endpoints for a log scale.
  CHECK(category_of(R"({"scenario": "tongue", "parameters": {},
                        "sweep": {"parameter": "x", "from": -1, "to": 1,
                                  "steps": 3, "scale": "log"}})") ==
        ErrorCategory::config_validation);

  CHECK(std::string(category_name(ErrorCategory::config_parse)) ==
        "config-parse");
  CHECK(category_exit_code(ErrorCategory::usage) == 64);
  CHECK(category_exit_code(ErrorCategory::internal) == 70);

  try {
    load_config_file("/definitely/not/a/real/path.json");
    FAIL("expected a config_io error");
  } catch (const CliError& e) {
    CHECK(e.category() == ErrorCategory::config_io);
  }
}

TEST_CASE("numbers render with 12 significant digits") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(43.0 / 3000.0) == "0.0143333333333");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-1e-300) == "-1e-300");
}

TEST_CASE("csv output quotes and orders columns deterministically") {
  ScenarioReport a;
  a.scenario = "demo";
  a.attributes.emplace_back("note", "x,y \"quoted\"");
  a.parameters.emplace_back("alpha", 0.25);
  a.probabilities.emplace_back("P(a)", 0.5);
  a.lhs = 0.5;
  a.rhs = 0.25;
  a.gap = 0.25;

  ScenarioReport b = a;
  b.parameters.emplace_back("beta", 0.75);  // new column appears after alpha
  b.warnings.push_back("w1");
  b.warnings.push_back("w2");

  std::string csv = emit_csv({a, b});
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t nl = csv.find('\n', pos);
    lines.push_back(csv.substr(pos, nl - pos));
    pos = nl + 1;
  }
  REQUIRE(lines.size() == 3);
  // Numeric columns appear in first-appearance order, so beta (new in the
  // second report) lands after P(a).
  CHECK(lines[0] ==
        "scenario,note,alpha,P(a),beta,lhs,rhs,gap,warnings");
  // RFC-4180: embedded commas and quotes force quoting, quotes double.
  CHECK(lines[1].find("\"x,y \"\"quoted\"\"\"") != std::string::npos);
  // Report a has no beta value: empty cell between P(a) and lhs.
  CHECK(lines[1].find(",0.25,0.5,,0.5,0.25,0.25,") != std::string::npos);
  CHECK(lines[2].find("w1; w2") != std::string::npos);

  // Byte-identical across repeated emission.
  CHECK(emit_csv({a, b}) == csv);

  CHECK_THROWS_AS(emit_report({a}, "yaml"), CliError);
}

TEST_CASE("json output carries the full report structure") {
  ScenarioReport r;
  r.scenario = "demo";
  r.probabilities.emplace_back("P(a)", 0.25);
  r.lhs = 0.25;
  std::string json = emit_json({r});
  CHECK(json.find("\"scenario\": \"demo\"") != std::string::npos);
  CHECK(json.find("\"P(a)\": 0.25") != std::string::npos);
  CHECK(json.find("\"lhs\": 0.25") != std::string::npos);
  // Empty sections are omitted entirely.
  CHECK(json.find("warnings") == std::string::npos);
  CHECK(json.find("fitted") == std::string::npos);
}

TEST_CASE("sweep grids hit both endpoints exactly") {
  SweepSpec lin;
  lin.parameter = "x";
  lin.from = 1.0;
  lin.to = 2.0;
  lin.steps = 3;
  std::vector<double> g = sweep_grid(lin);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(g[2] == 2.0);

  SweepSpec log;
  log.parameter = "x";
  log.from = 1.0;
  log.to = 100.0;
  log.steps = 3;
  log.log_scale = true;
  std::vector<double> lg = sweep_grid(log);
  REQUIRE(lg.size() == 3);
  CHECK(lg[0] == 1.0);
  CHECK(lg[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(lg[2] == 100.0);

  SweepSpec single;
  single.parameter = "x";
  single.from = 0.3;
  single.to = 0.9;
  single.steps = 1;
  CHECK(sweep_grid(single) == std::vector<double>{0.3});
}

TEST_CASE("runner evaluates configs like direct library calls") {
  // All four moduli are explicit so the runner and the direct call perform
  // bit-identical arithmetic (the complement default computes 1 - x).
  ScenarioConfig config;
  config.kind = "tongue";
  config.parameters["lambda1_sq"] = Complex{0.9, 0.0};
  config.parameters["lambda2_sq"] = Complex{0.1, 0.0};
  config.parameters["mu1_sq"] = Complex{0.8, 0.0};
  config.parameters["mu2_sq"] = Complex{0.2, 0.0};
  ScenarioReport from_config = run_single(config);
  ScenarioReport direct = qplift::tongue_scenario(
      qplift::TongueParams::from_moduli_squared(0.9, 0.1, 0.8, 0.2));
  CHECK(from_config.lhs == direct.lhs);
  CHECK(from_config.rhs == direct.rhs);
  CHECK(from_config.gap == direct.gap);
}

TEST_CASE("runner rejects bad parameter maps by category") {
  ScenarioConfig config;
  config.kind = "tongue";
  config.parameters["lambda1_sq"] = Complex{0.9, 0.0};
  // mu1_sq missing
  try {
    run_single(config);
    FAIL("expected a config_validation error");
  } catch (const CliError& e) {
    CHECK(e.category() == ErrorCategory::config_validation);
  }

  config.parameters["mu1_sq"] = Complex{0.8, 0.0};
  config.parameters["stray"] = Complex{1.0, 0.0};
  CHECK_THROWS_AS(run_single(config), CliError);
  config.parameters.erase("stray");

  // Complex where a real is required.
  config.parameters["mu1_sq"] = Complex{0.8, 0.1};
  CHECK_THROWS_AS(run_single(config), CliError);
}

TEST_CASE("runner expands sweeps in declared order") {
  ScenarioConfig config;
  config.kind = "tongue";
  config.parameters["lambda1_sq"] = Complex{0.9, 0.0};
  config.parameters["mu1_sq"] = Complex{0.8, 0.0};
  SweepSpec sweep;
  sweep.parameter = "mu1_sq";
  sweep.from = 0.2;
  sweep.to = 0.8;
  sweep.steps = 4;
  config.sweep = sweep;

  std::vector<ScenarioReport> reports = run(config);
  REQUIRE(reports.size() == 4);
  // rhs is the neutral chocolate probability, exactly the swept value.
  CHECK(reports[0].rhs == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(reports[3].rhs == doctest::Approx(0.8).epsilon(1e-12));

  config.kind = "custom-lifting";
  CHECK_THROWS_AS(run(config), CliError);
}

TEST_CASE("runner fit wraps the lactose preference fit") {
  ScenarioConfig config;
  config.kind = "lactose";
  config.parameters["p_L"] = Complex{0.8, 0.0};
  config.parameters["p_plus_L"] = Complex{2920.0 / 3000.0, 0.0};
  config.parameters["p_plus_G"] = Complex{33.0 / 3000.0, 0.0};

  ScenarioReport r = run_fit(config, 43.0 / 3000.0);
  CHECK(std::abs(r.lhs - 43.0 / 3000.0) <= 1e-9);
  bool has_ratio = false;
  for (const auto& [name, value] : r.fitted)
    if (name == "k_ratio") {
      has_ratio = true;
      CHECK(value == doctest::Approx(0.0077792556761470854).epsilon(1e-12));
    }
  CHECK(has_ratio);

  config.kind = "tongue";
  CHECK_THROWS_AS(run_fit(config, 0.5), CliError);
}

TEST_CASE("runner builds custom liftings from parsed configs") {
  // Same channel as the hand-checked example: damping of the excited level
  // with the initial state pure along (1, i)/sqrt(2).
  ScenarioConfig c = parse_config(R"({
    "scenario": "custom-lifting",
    "custom": {
      "initial": [[0.5, [0, -0.5]], [[0, 0.5], 0.5]],
      "kraus": [[[1, 0], [0, 0.8]], [[0, 0.6], [0, 0]]],
      "events_factor1": {"labels": ["up", "down"],
                         "effects": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]},
      "events_factor2": {"labels": ["stay", "decay"],
                         "effects": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}
    }
  })");
  ScenarioReport r = run_single(c);
  bool found = false;
  for (const auto& [name, value] : r.probabilities)
    if (name == "P(up,stay)") {
      found = true;
      // 0.5 * (0.5 + 0.36 * 0.5) = 0.34 by direct arithmetic.
      CHECK(value == doctest::Approx(0.34).epsilon(1e-10));
    }
  CHECK(found);
  // The compound lifting never demolishes its input.
  CHECK(std::abs(r.gap) <= 1e-10);
}

TEST_CASE("demo reports are deterministic") {
  std::string once = emit_table(demo_reports());
  std::string twice = emit_table(demo_reports());
  CHECK(once == twice);
  CHECK(demo_text() == demo_text());
  CHECK(once.find("scenario: tongue") != std::string::npos);
  CHECK(once.find("scenario: lactose") != std::string::npos);
  CHECK(once.find("scenario: bayes") != std::string::npos);
}

TEST_CASE("self-check runner reports per-suite lines") {
  CheckOutcome outcome = run_check(977);
  CHECK(outcome.failed == 0);
  CHECK(outcome.total >= 10);
  CHECK(outcome.text.find("[pass]") != std::string::npos);
  CHECK(outcome.text.find("seed 977") != std::string::npos);
}
