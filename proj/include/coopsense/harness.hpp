// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coopsense/channel.hpp"
#include "coopsense/detector.hpp"
#include "coopsense/fusion.hpp"
#include "coopsense/fuzzy.hpp"

namespace coopsense {

/// Overrides applied on top of FuzzySystem::default_options.
struct FuzzyConfig {
  std::optional<Universe> universe;
  std::optional<std::array<TriangularMf, 3>> input_terms;   // LOW, MEDIUM, HIGH
  std::optional<std::array<TriangularMf, 2>> output_terms;  // ABSENT, PRESENT
  Defuzzifier defuzzifier = Defuzzifier::Centroid;
  Eigen::Index resolution = 1001;
};

struct ExperimentConfig {
  int n_users = 3;
  int n_samples = 10;
  double prior_h1 = 0.5;
  SensingChannelConfig sensing;  // carries snr_db and the noise variance
  ReportingChannelConfig reporting;
  FusionStrategy strategy;
  /// Per-user target false-alarm probability used to set the local threshold.
  double local_pf = 0.1;
  /// Explicit local threshold; wins over local_pf when set. May be +/-inf.
  std::optional<double> local_threshold;
  std::vector<MaliceModel> malice;
  FuzzyConfig fuzzy;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  /// Run every trial under this hypothesis instead of drawing from prior_h1.
  std::optional<Hypothesis> forced_hypothesis;
  /// Free-form physical-layer metadata, kept as serialized JSON.
  std::string metadata_json = "{}";

  /// Throws ConfigError listing every violated invariant.
  void validate() const;

  DetectorConfig detector() const;
  /// The local threshold actually used by every user.
  double threshold() const;
};

FuzzyMode fuzzy_mode_for(const FusionStrategy& strategy);
FuzzySystem build_fuzzy_system(const ExperimentConfig& config);

/// Extends threshold_for_pf to the closed interval: target 0 maps to +inf and
/// target 1 to -inf.
double threshold_for_target(const DetectorConfig& detector, double target_pf);

struct TrialRecord {
  std::uint64_t trial_index = 0;
  Hypothesis truth = Hypothesis::H0;
  std::vector<double> statistics;
  std::vector<FusionReport> reports;  // post-malice, post-transport
  std::optional<double> crisp_value;  // fuzzy strategies only
  int decision = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct RunOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Threshold-independent randomness of one trial.
struct TrialDraw {
  std::uint64_t trial_index = 0;
  Hypothesis truth = Hypothesis::H0;
  std::vector<double> statistics;
  std::vector<double> reporting_gains;
};

/// A validated configuration with its fuzzy system built once. Every method
/// is const and safe to call from several threads.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const FuzzySystem& fuzzy_system() const { return fuzzy_; }

  TrialDraw draw(std::uint64_t trial_index) const;

  /// Local decisions, malice, reporting channel and fusion for one draw.
  TrialRecord complete(const TrialDraw& draw, double threshold,
                       const FusionStrategy& strategy) const;

  TrialRecord run_trial(std::uint64_t trial_index) const;

  /// Recomputes the final decision from the recorded received values.
  int replay_decision(const TrialRecord& record) const;

  std::vector<TrialDraw> draw_all(const RunOptions& options = {}) const;

 private:
  ExperimentConfig config_;
  FuzzySystem fuzzy_;
};

std::vector<TrialRecord> run_trials(const ExperimentConfig& config,
                                    const RunOptions& options = {});

struct RocPoint {
  double operating_parameter = 0.0;
  double empirical_pf = 0.0;
  double empirical_pd = 0.0;
  std::int64_t n_h0 = 0;
  std::int64_t n_h1 = 0;
  std::int64_t false_alarms = 0;
  std::int64_t detections = 0;
};

/// Hard strategies: each grid value is the per-user target Pf. Fuzzy
/// strategies: each grid value is the fuzzy threshold; the local threshold
/// comes from the config. All grid points share one set of trial draws.
std::vector<RocPoint> roc_sweep(const ExperimentConfig& config,
                                const std::vector<double>& grid,
                                const RunOptions& options = {});

/// Pd read off a sweep at a given Pf: the upper staircase of the points,
/// linearly interpolated in Pf.
double pd_at_pf(const std::vector<RocPoint>& points, double target_pf);

struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Crisp output over a resolution x resolution grid spanning the input
/// universe, for the two inputs other than fixed_index (lower index on x).
std::vector<SurfacePoint> decision_surface(const FuzzySystem& system,
                                           int fixed_index, double fixed_value,
                                           int resolution);
std::vector<SurfacePoint> decision_surface(const ExperimentConfig& config,
                                           int fixed_index, double fixed_value,
                                           int resolution);

struct ValidationRow {
  double target_pf = 0.0;
  double theoretical_pd = 0.0;
  double empirical_pd = 0.0;
  double abs_error = 0.0;
  double empirical_pf = 0.0;
  double pf_std_error = 0.0;  // binomial standard error of empirical_pf at the target
};

struct ValidationTable {
  std::vector<ValidationRow> rows;

  bool within(double tolerance) const;
};

/// Per-user theory-vs-simulation table, pooled over users, using the honest
/// local decisions (before malice and transport).
ValidationTable validate_theory(const ExperimentConfig& config,
                                const std::vector<double>& pf_grid,
                                const RunOptions& options = {});

}  // namespace coopsense
