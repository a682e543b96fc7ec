// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <doctest.h>

#include "coopsense/config.hpp"
#include "coopsense/csv.hpp"
#include "coopsense/error.hpp"

using namespace coopsense;

namespace {

std::vector<std::string> problems(std::string_view json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& list, std::string_view needle) {
  for (const auto& s : list) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("full document") {
  const auto c = parse_config(R"({
    "users": 3, "samples": 20, "noise_variance": 2.0, "snr_db": 7.5, "prior_h1": 0.25,
    "sensing": {"model": "rayleigh", "fading_mean_square": 1.5, "domain": "complex",
                "signal": "gaussian"},
    "reporting": {"model": "rayleigh_awgn", "noise_variance": 0.1, "fading_mean_square": 2.0},
    "strategy": {"kind": "fuzzy_information", "fuzzy_threshold": 0.6, "local_pf": 0.05},
    "malice": [{"user": 2, "mode": "statistic_swap"}],
    "fuzzy": {"universe": [0, 120],
              "inputs": {"LOW": [0, 0, 60], "MEDIUM": [0, 60, 120], "HIGH": [60, 120, 120]},
              "output": {"ABSENT": [0, 0.3, 0.5], "PRESENT": [0.5, 0.7, 1]},
              "defuzzifier": "lom", "resolution": 501},
    "trials": 5000, "seed": 18446744073709551615,
    "metadata": {"bit_rate": 500000, "doppler_hz": 200}
  })");
  CHECK(c.n_users == 3);
  CHECK(c.n_samples == 20);
  CHECK(c.sensing.noise_variance == 2.0);
  CHECK(c.sensing.snr_db == 7.5);
  CHECK(c.prior_h1 == 0.25);
  CHECK(c.sensing.model == SensingModel::RayleighFlat);
  CHECK(c.sensing.fading_mean_square == 1.5);
  CHECK(c.sensing.domain == SampleDomain::Complex);
  CHECK(c.sensing.signal == SignalModel::Gaussian);
  CHECK(c.reporting.model == ReportingModel::RayleighAwgn);
  CHECK(c.reporting.noise_variance == 0.1);
  CHECK(c.reporting.fading_mean_square == 2.0);
  CHECK(c.strategy.kind == FusionKind::FuzzyInformation);
  CHECK(c.strategy.fuzzy_threshold == 0.6);
  CHECK(c.local_pf == 0.05);
  REQUIRE(c.malice.size() == 1);
  CHECK(c.malice[0].user_index == 2);
  CHECK(c.malice[0].mode == MaliceMode::StatisticSwap);
  REQUIRE(c.fuzzy.universe.has_value());
  CHECK(c.fuzzy.universe->hi == 120.0);
  REQUIRE(c.fuzzy.input_terms.has_value());
  CHECK((*c.fuzzy.input_terms)[1].peak == 60.0);
  REQUIRE(c.fuzzy.output_terms.has_value());
  CHECK((*c.fuzzy.output_terms)[0].peak == 0.3);
  CHECK(c.fuzzy.defuzzifier == Defuzzifier::LargestOfMaximum);
  CHECK(c.fuzzy.resolution == 501);
  CHECK(c.trials == 5000);
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.metadata_json.find("doppler_hz") != std::string::npos);

  const auto system = build_fuzzy_system(c);
  CHECK(system.grid().size() == 501);
  CHECK(system.options().inputs[2].universe.hi == 120.0);
}

TEST_CASE("empty document keeps the defaults") {
  const auto c = parse_config("{}");
  const ExperimentConfig d;
  CHECK(c.n_users == d.n_users);
  CHECK(c.n_samples == d.n_samples);
  CHECK(c.strategy.kind == d.strategy.kind);
  CHECK(c.trials == d.trials);
  CHECK(c.metadata_json == "{}");
}

TEST_CASE("threshold accepts numbers and infinities") {
  CHECK(parse_config(R"({"strategy": {"threshold": 14.5}})").threshold() == 14.5);
  CHECK(parse_config(R"({"strategy": {"threshold": "inf"}})").threshold() ==
        std::numeric_limits<double>::infinity());
  CHECK(parse_config(R"({"strategy": {"threshold": "-inf"}})").threshold() ==
        -std::numeric_limits<double>::infinity());
  CHECK(mentions(problems(R"({"strategy": {"threshold": "big"}})"), "strategy.threshold"));
}

TEST_CASE("every problem is reported at once") {
  const auto list = problems(R"({
    "users": -1, "samples": "ten", "colour": "blue",
    "sensing": {"model": "rician", "extra": 1},
    "reporting": 3,
    "strategy": {"kind": "xor"},
    "malice": [{"user": 0}],
    "fuzzy": {"universe": [1], "inputs": {"LOW": [0, 0]}, "defuzzifier": "mean"},
    "trials": 1.5,
    "metadata": []
  })");
  CHECK(mentions(list, "users"));
  CHECK(mentions(list, "samples"));
  CHECK(mentions(list, "colour: unknown key"));
  CHECK(mentions(list, "sensing.model"));
  CHECK(mentions(list, "sensing.extra: unknown key"));
  CHECK(mentions(list, "reporting: expected an object"));
  CHECK(mentions(list, "strategy.kind"));
  CHECK(mentions(list, "user and mode are required"));
  CHECK(mentions(list, "fuzzy.universe"));
  CHECK(mentions(list, "fuzzy.inputs.LOW"));
  CHECK(mentions(list, "fuzzy.inputs.MEDIUM: missing"));
  CHECK(mentions(list, "fuzzy.defuzzifier"));
  CHECK(mentions(list, "trials"));
  CHECK(mentions(list, "metadata"));
}

TEST_CASE("invariant violations surface as config errors") {
  const auto list = problems(R"({"prior_h1": 0, "noise_variance": 0,
                                 "strategy": {"kind": "kofn", "k": 5}})");
  CHECK(mentions(list, "prior_h1"));
  CHECK(mentions(list, "noise_variance"));
  CHECK(mentions(list, "strategy.k"));

  CHECK(mentions(problems(R"({"users": 4, "strategy": {"kind": "fuzzy_decision"}})"),
                 "exactly 3 users"));
  CHECK(mentions(problems(R"({"strategy": {"kind": "fuzzy_decision"},
                              "fuzzy": {"inputs": {"LOW": [-3, -3, -2], "MEDIUM": [-1, 0, 1],
                                                   "HIGH": [2, 3, 3]}}})"),
                 "fuzzy:"));
}

TEST_CASE("malformed JSON and missing files") {
  CHECK_THROWS_AS(parse_config("{\"users\": "), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/coopsense.json"), ConfigError);

  const auto path = std::filesystem::temp_directory_path() / "coopsense_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"samples": 32, "snr_db": -2})";
  }
  const auto c = load_config(path);
  CHECK(c.n_samples == 32);
  CHECK(c.sensing.snr_db == -2.0);
  std::filesystem::remove(path);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 0.271}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("CSV headers and rows") {
  std::ostringstream roc;
  RocPoint p;
  p.operating_parameter = 0.1;
  p.empirical_pf = 0.25;
  p.empirical_pd = 0.75;
  p.n_h0 = 4;
  p.n_h1 = 8;
  write_roc_csv(roc, {p});
  CHECK(roc.str() == "param,pf,pd,n_h0,n_h1\n0.1,0.25,0.75,4,8\n");

  std::ostringstream surface;
  write_surface_csv(surface, {{-3.0, 1.5, 0.5}});
  CHECK(surface.str() == "x,y,value\n-3,1.5,0.5\n");

  std::ostringstream validation;
  write_validation_csv(validation, {{{0.1, 0.9, 0.91, 0.01, 0.11, 0.002}}});
  CHECK(validation.str() ==
        "target_pf,theoretical_pd,empirical_pd,abs_error,empirical_pf,pf_std_error\n"
        "0.1,0.9,0.91,0.01,0.11,0.002\n");

  std::ostringstream trial;
  write_trial_header(trial, 2);
  TrialRecord r;
  r.trial_index = 7;
  r.truth = Hypothesis::H1;
  r.statistics = {12.5, 3.0};
  r.reports = {{0, 1.0, 0.5, 1}, {1, -1.0, -1.25, 0}};
  r.decision = 1;
  write_trial_row(trial, r);
  r.crisp_value = 0.75;
  write_trial_row(trial, r);
  CHECK(trial.str() ==
        "trial,truth,s1,s2,d1,d2,tx1,tx2,y1,y2,crisp,decision\n"
        "7,h1,12.5,3,1,0,1,-1,0.5,-1.25,,1\n"
        "7,h1,12.5,3,1,0,1,-1,0.5,-1.25,0.75,1\n");
}
