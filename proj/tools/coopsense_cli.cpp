// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: sense | roc | fuzzy-eval | surface | validate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coopsense/config.hpp"
#include "coopsense/csv.hpp"
#include "coopsense/error.hpp"
#include "coopsense/harness.hpp"

namespace cs = coopsense;

namespace {

constexpr int kViolation = 1;
constexpr int kUsageError = 2;

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw CLI::ValidationError(what, "'" + text + "' is not a number");
  }
  return value;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  if (text.empty()) return values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(parse_number(item, what));
  return values;
}

// lo:hi:steps, steps points including both ends.
std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw CLI::ValidationError("--grid", "expected lo:hi:steps");
  }
  const double lo = parse_number(text.substr(0, first), "--grid");
  const double hi = parse_number(text.substr(first + 1, second - first - 1), "--grid");
  const double steps = parse_number(text.substr(second + 1), "--grid");
  if (steps < 1 || steps != static_cast<int>(steps)) {
    throw CLI::ValidationError("--grid", "steps must be a positive integer");
  }
  const int n = static_cast<int>(steps);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = n == 1 ? lo : lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  }
  if (n > 1) grid.back() = hi;
  return grid;
}

cs::FusionKind kind_for_mode(const std::string& mode) {
  return mode == "info" ? cs::FusionKind::FuzzyInformation : cs::FusionKind::FuzzyDecision;
}

// Fuzzy settings from an optional config, with the mode forced by --mode.
cs::ExperimentConfig fuzzy_config(const std::string& config_path, const std::string& mode) {
  cs::ExperimentConfig config;
  if (!config_path.empty()) config = cs::load_config(config_path);
  config.strategy.kind = kind_for_mode(mode);
  return config;
}

template <typename Writer>
void write_output(const std::string& path, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  writer(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative spectrum sensing simulator"};
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  // sense
  auto* sense = app.add_subcommand("sense", "Run one trial and print its record");
  std::string sense_config;
  std::uint64_t sense_seed = 0;
  std::uint64_t sense_trial = 0;
  std::string sense_hypothesis;
  sense->add_option("--config", sense_config, "Experiment config (JSON)")->required();
  sense->add_option("--seed", sense_seed, "Master seed")->required();
  sense->add_option("--trial", sense_trial, "Trial index");
  sense->add_option("--hypothesis", sense_hypothesis, "Force h0 or h1")
      ->check(CLI::IsMember({"h0", "h1"}));

  // roc
  auto* roc = app.add_subcommand("roc", "Sweep an operating parameter into ROC points");
  std::string roc_config, roc_grid, roc_out;
  roc->add_option("--config", roc_config, "Experiment config (JSON)")->required();
  roc->add_option("--grid", roc_grid, "lo:hi:steps")->required();
  roc->add_option("--out", roc_out, "Output CSV path")->required();

  // fuzzy-eval
  auto* feval = app.add_subcommand("fuzzy-eval", "Evaluate the fuzzy fusion center");
  std::string feval_mode, feval_inputs, feval_defuzz = "centroid", feval_config;
  feval->add_option("--mode", feval_mode, "info | decision")
      ->required()
      ->check(CLI::IsMember({"info", "decision"}));
  feval->add_option("--inputs", feval_inputs, "a,b,c")->required();
  feval->add_option("--defuzz", feval_defuzz, "centroid | bisector | som | mom | lom")
      ->check(CLI::IsMember({"centroid", "bisector", "som", "mom", "lom"}));
  feval->add_option("--config", feval_config, "Optional config with fuzzy overrides");

  // surface
  auto* surface = app.add_subcommand("surface", "Tabulate a two-input decision surface");
  std::string surface_mode, surface_fixed, surface_out, surface_config;
  int surface_resolution = 31;
  surface->add_option("--mode", surface_mode, "info | decision")
      ->required()
      ->check(CLI::IsMember({"info", "decision"}));
  surface->add_option("--fixed", surface_fixed, "idx=value, idx in 0..2")->required();
  surface->add_option("--resolution", surface_resolution, "Grid points per axis")
      ->check(CLI::PositiveNumber);
  surface->add_option("--out", surface_out, "Output CSV path")->required();
  surface->add_option("--config", surface_config, "Optional config with fuzzy overrides");

  // validate
  auto* validate = app.add_subcommand("validate", "Compare simulated and closed-form Pd");
  std::string validate_config, validate_grid, validate_out;
  double tolerance = 0.02;
  validate->add_option("--config", validate_config, "Experiment config (JSON)")->required();
  validate->add_option("--pf-grid", validate_grid, "Comma-separated target Pf values")
      ->required();
  validate->add_option("--tolerance", tolerance, "Allowed |empirical - theoretical|");
  validate->add_option("--out", validate_out, "Output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  const cs::RunOptions run{threads};
  try {
    if (*sense) {
      auto config = cs::load_config(sense_config);
      config.seed = sense_seed;
      if (sense_hypothesis == "h0") config.forced_hypothesis = cs::Hypothesis::H0;
      if (sense_hypothesis == "h1") config.forced_hypothesis = cs::Hypothesis::H1;
      const cs::Experiment experiment(config);
      const auto record = experiment.run_trial(sense_trial);
      cs::write_trial_header(std::cout, config.n_users);
      cs::write_trial_row(std::cout, record);
    } else if (*roc) {
      const auto config = cs::load_config(roc_config);
      const auto points = cs::roc_sweep(config, parse_grid(roc_grid), run);
      write_output(roc_out, [&](std::ostream& out) { cs::write_roc_csv(out, points); });
    } else if (*feval) {
      const auto inputs = parse_list(feval_inputs, "--inputs");
      if (inputs.size() != 3) {
        throw CLI::ValidationError("--inputs", "exactly three values are required");
      }
      auto config = fuzzy_config(feval_config, feval_mode);
      config.fuzzy.defuzzifier = cs::parse_defuzzifier(feval_defuzz);
      const auto system = cs::build_fuzzy_system(config);
      const double value = cs::evaluate(system, {inputs[0], inputs[1], inputs[2]});
      std::printf("%.4f\n", value);
    } else if (*surface) {
      const auto eq = surface_fixed.find('=');
      if (eq == std::string::npos) {
        throw CLI::ValidationError("--fixed", "expected idx=value");
      }
      const double index = parse_number(surface_fixed.substr(0, eq), "--fixed");
      const double value = parse_number(surface_fixed.substr(eq + 1), "--fixed");
      const auto config = fuzzy_config(surface_config, surface_mode);
      const auto grid = cs::decision_surface(config, static_cast<int>(index), value,
                                             surface_resolution);
      write_output(surface_out, [&](std::ostream& out) { cs::write_surface_csv(out, grid); });
    } else if (*validate) {
      const auto config = cs::load_config(validate_config);
      const auto table =
          cs::validate_theory(config, parse_list(validate_grid, "--pf-grid"), run);
      write_output(validate_out,
                   [&](std::ostream& out) { cs::write_validation_csv(out, table); });
      if (!table.within(tolerance)) {
        std::cerr << "validate: |empirical - theoretical| exceeds " << tolerance << '\n';
        return kViolation;
      }
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const cs::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return 0;
}
