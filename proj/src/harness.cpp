// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "coopsense/error.hpp"

namespace coopsense {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

unsigned resolve_threads(const RunOptions& options, std::int64_t work) {
  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::clamp<std::int64_t>(work, 1, static_cast<std::int64_t>(threads)));
}

/// Calls body(chunk, begin, end) on contiguous chunks of [0, count). The
/// chunk layout depends only on count and the thread count, and callers only
/// write to per-index or per-chunk slots, so results do not depend on timing.
template <typename Body>
void parallel_chunks(std::int64_t count, unsigned threads, Body&& body) {
  if (threads <= 1) {
    body(0u, std::int64_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::int64_t begin = count * t / threads;
      const std::int64_t end = count * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] {
        try {
          body(t, begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  auto check = [&](bool ok, std::string message) {
    if (!ok) problems.push_back(std::move(message));
  };

  check(n_users >= 1, "users must be >= 1");
  check(n_samples >= 1, "samples must be >= 1");
  check(trials >= 1, "trials must be >= 1");
  check(prior_h1 > 0.0 && prior_h1 < 1.0, "prior_h1 must lie in (0, 1)");
  check(sensing.noise_variance > 0.0 && std::isfinite(sensing.noise_variance),
        "noise_variance must be > 0");
  check(std::isfinite(sensing.snr_db), "snr_db must be finite");
  check(sensing.fading_mean_square > 0.0 && std::isfinite(sensing.fading_mean_square),
        "sensing.fading_mean_square must be > 0");
  check(reporting.noise_variance >= 0.0 && std::isfinite(reporting.noise_variance),
        "reporting.noise_variance must be >= 0");
  check(reporting.fading_mean_square > 0.0 && std::isfinite(reporting.fading_mean_square),
        "reporting.fading_mean_square must be > 0");
  check(local_threshold.has_value() || (local_pf > 0.0 && local_pf < 1.0),
        "strategy.local_pf must lie in (0, 1)");
  check(!local_threshold || !std::isnan(*local_threshold),
        "strategy.threshold must not be NaN");

  if (strategy.is_hard()) {
    if (strategy.kind == FusionKind::HardKofN) {
      check(strategy.k >= 1 && strategy.k <= n_users,
            "strategy.k must lie in [1, users]");
    }
  } else {
    check(n_users == static_cast<int>(kFuzzyInputs),
          "fuzzy strategies require exactly 3 users");
    check(strategy.fuzzy_threshold > 0.0 && strategy.fuzzy_threshold < 1.0,
          "strategy.fuzzy_threshold must lie in (0, 1)");
    try {
      build_fuzzy_system(*this);
    } catch (const std::exception& e) {
      problems.push_back(std::string("fuzzy: ") + e.what());
    }
  }

  for (const auto& m : malice) {
    const std::string who = "malice[user " + std::to_string(m.user_index) + "]";
    check(m.user_index >= 0 && m.user_index < n_users, who + ": user out of range");
    if (m.mode == MaliceMode::StatisticSwap) {
      check(strategy.reports_statistics(),
            who + ": statistic_swap requires fuzzy_information");
    } else {
      check(!strategy.reports_statistics(),
            who + ": decision malice modes cannot corrupt statistics");
    }
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
}

DetectorConfig ExperimentConfig::detector() const {
  DetectorConfig d;
  d.n_samples = n_samples;
  d.noise_variance = sensing.noise_variance;
  d.threshold = threshold();
  return d;
}

double ExperimentConfig::threshold() const {
  if (local_threshold) return *local_threshold;
  DetectorConfig d;
  d.n_samples = n_samples;
  d.noise_variance = sensing.noise_variance;
  return threshold_for_pf(d, local_pf);
}

FuzzyMode fuzzy_mode_for(const FusionStrategy& strategy) {
  return strategy.kind == FusionKind::FuzzyInformation ? FuzzyMode::Information
                                                        : FuzzyMode::Decision;
}

FuzzySystem build_fuzzy_system(const ExperimentConfig& config) {
  auto options = FuzzySystem::default_options(fuzzy_mode_for(config.strategy));
  const auto& fz = config.fuzzy;
  if (fz.universe) {
    for (std::size_t i = 0; i < kFuzzyInputs; ++i) {
      options.inputs[i] = default_input_variable(options.inputs[i].name, *fz.universe);
    }
  }
  if (fz.input_terms) {
    for (auto& input : options.inputs) input.terms = *fz.input_terms;
  }
  if (fz.output_terms) options.output.terms = *fz.output_terms;
  options.defuzzifier = fz.defuzzifier;
  options.resolution = fz.resolution;
  return FuzzySystem(std::move(options));
}

double threshold_for_target(const DetectorConfig& detector, double target_pf) {
  if (std::isnan(target_pf)) throw std::domain_error("target Pf is NaN");
  if (target_pf <= 0.0) return kInf;
  if (target_pf >= 1.0) return -kInf;
  return threshold_for_pf(detector, target_pf);
}

Experiment::Experiment(ExperimentConfig config)
    : config_(std::move(config)),
      fuzzy_((config_.validate(), build_fuzzy_system(config_))) {}

TrialDraw Experiment::draw(std::uint64_t trial_index) const {
  TrialDraw out;
  out.trial_index = trial_index;
  if (config_.forced_hypothesis) {
    out.truth = *config_.forced_hypothesis;
  } else {
    RngStream coin(config_.seed, trial_index, StreamRole::Hypothesis);
    out.truth = coin.uniform() < config_.prior_h1 ? Hypothesis::H1 : Hypothesis::H0;
  }
  auto streams = RngStreamSet::for_trial(config_.seed, trial_index);
  const auto window = realize_sensing(config_.sensing, out.truth, config_.n_samples,
                                      config_.n_users, streams);
  out.statistics.reserve(config_.n_users);
  for (const auto& samples : window.received_samples) {
    out.statistics.push_back(energy_statistic(samples));
  }
  out.reporting_gains =
      realize_reporting_gains(config_.reporting, config_.n_users, streams.report_fade);
  return out;
}

namespace {

// Fills `record` in place so sweeps can reuse its buffers.
void complete_into(const Experiment& experiment, const TrialDraw& draw,
                   double threshold, const FusionStrategy& strategy,
                   TrialRecord& record) {
  const auto& config = experiment.config();
  const int users = config.n_users;
  const bool statistic_payload = strategy.reports_statistics();

  record.trial_index = draw.trial_index;
  record.truth = draw.truth;
  record.statistics = draw.statistics;
  record.reports.resize(users);
  for (int u = 0; u < users; ++u) {
    const int d = decide(draw.statistics[u], threshold);
    record.reports[u] = {u, statistic_payload ? draw.statistics[u] : antipodal(d),
                         0.0, d};
  }

  if (!config.malice.empty()) {
    RngStream stream(config.seed, draw.trial_index, StreamRole::Malice);
    MaliceContext context{statistic_payload, draw.truth, config.n_samples,
                          config.sensing};
    for (const auto& model : config.malice) {
      record.reports[model.user_index] =
          apply_malice(record.reports[model.user_index], model, stream, context);
    }
  }

  RngStream noise(config.seed, draw.trial_index, StreamRole::ReportNoise);
  for (int u = 0; u < users; ++u) {
    auto& report = record.reports[u];
    report.received = transport_report(config.reporting, report.transmitted,
                                       draw.reporting_gains[u], noise);
  }

  if (strategy.is_hard()) {
    std::array<int, 64> small{};
    std::vector<int> large;
    std::span<int> bits;
    if (users <= static_cast<int>(small.size())) {
      bits = std::span<int>(small.data(), users);
    } else {
      large.resize(users);
      bits = large;
    }
    for (int u = 0; u < users; ++u) bits[u] = slice_report(record.reports[u].received);
    record.crisp_value.reset();
    record.decision = fuse_hard(bits, strategy);
  } else {
    const auto verdict = fuse_fuzzy(record.reports, experiment.fuzzy_system(), strategy);
    record.crisp_value = verdict.crisp_value;
    record.decision = verdict.decision;
  }
}

}  // namespace

TrialRecord Experiment::complete(const TrialDraw& draw, double threshold,
                                 const FusionStrategy& strategy) const {
  TrialRecord record;
  complete_into(*this, draw, threshold, strategy, record);
  return record;
}

TrialRecord Experiment::run_trial(std::uint64_t trial_index) const {
  return complete(draw(trial_index), config_.threshold(), config_.strategy);
}

int Experiment::replay_decision(const TrialRecord& record) const {
  const auto& strategy = config_.strategy;
  if (strategy.is_hard()) {
    std::vector<int> bits;
    bits.reserve(record.reports.size());
    for (const auto& r : record.reports) bits.push_back(slice_report(r.received));
    return fuse_hard(bits, strategy);
  }
  return fuse_fuzzy(record.reports, fuzzy_, strategy).decision;
}

std::vector<TrialDraw> Experiment::draw_all(const RunOptions& options) const {
  std::vector<TrialDraw> draws(config_.trials);
  parallel_chunks(config_.trials, resolve_threads(options, config_.trials),
                  [&](unsigned, std::int64_t begin, std::int64_t end) {
                    for (std::int64_t k = begin; k < end; ++k) draws[k] = draw(k);
                  });
  return draws;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config,
                                    const RunOptions& options) {
  const Experiment experiment(config);
  std::vector<TrialRecord> records(config.trials);
  parallel_chunks(config.trials, resolve_threads(options, config.trials),
                  [&](unsigned, std::int64_t begin, std::int64_t end) {
                    for (std::int64_t k = begin; k < end; ++k) {
                      records[k] = experiment.run_trial(k);
                    }
                  });
  return records;
}

std::vector<RocPoint> roc_sweep(const ExperimentConfig& config,
                                const std::vector<double>& grid,
                                const RunOptions& options) {
  const Experiment experiment(config);
  const auto draws = experiment.draw_all(options);
  const auto& strategy = config.strategy;
  const DetectorConfig detector = config.detector();
  const std::size_t points = grid.size();

  std::vector<double> thresholds(points);
  for (std::size_t g = 0; g < points; ++g) {
    thresholds[g] = strategy.is_hard() ? threshold_for_target(detector, grid[g])
                                       : config.threshold();
  }

  struct Counts {
    std::vector<std::int64_t> fires_h0, fires_h1;
    std::int64_t n_h0 = 0, n_h1 = 0;
  };
  const unsigned threads = resolve_threads(options, config.trials);
  std::vector<Counts> partial(threads, Counts{std::vector<std::int64_t>(points),
                                              std::vector<std::int64_t>(points)});

  parallel_chunks(config.trials, threads,
                  [&](unsigned chunk, std::int64_t begin, std::int64_t end) {
    Counts& counts = partial[chunk];
    TrialRecord scratch;
    for (std::int64_t k = begin; k < end; ++k) {
      const TrialDraw& draw = draws[k];
      const bool h1 = draw.truth == Hypothesis::H1;
      (h1 ? counts.n_h1 : counts.n_h0) += 1;
      auto& fires = h1 ? counts.fires_h1 : counts.fires_h0;
      if (strategy.is_hard()) {
        for (std::size_t g = 0; g < points; ++g) {
          complete_into(experiment, draw, thresholds[g], strategy, scratch);
          fires[g] += scratch.decision;
        }
      } else {
        complete_into(experiment, draw, config.threshold(), strategy, scratch);
        for (std::size_t g = 0; g < points; ++g) {
          fires[g] += *scratch.crisp_value >= grid[g] ? 1 : 0;
        }
      }
    }
  });

  std::vector<RocPoint> out(points);
  for (std::size_t g = 0; g < points; ++g) {
    RocPoint& p = out[g];
    p.operating_parameter = grid[g];
    for (const auto& counts : partial) {
      p.n_h0 += counts.n_h0;
      p.n_h1 += counts.n_h1;
      p.false_alarms += counts.fires_h0[g];
      p.detections += counts.fires_h1[g];
    }
    p.empirical_pf = p.n_h0 ? static_cast<double>(p.false_alarms) / p.n_h0
                            : std::numeric_limits<double>::quiet_NaN();
    p.empirical_pd = p.n_h1 ? static_cast<double>(p.detections) / p.n_h1
                            : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double pd_at_pf(const std::vector<RocPoint>& points, double target_pf) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(points.size() + 2);
  curve.emplace_back(0.0, 0.0);
  curve.emplace_back(1.0, 1.0);
  for (const auto& p : points) {
    if (std::isfinite(p.empirical_pf) && std::isfinite(p.empirical_pd)) {
      curve.emplace_back(p.empirical_pf, p.empirical_pd);
    }
  }
  std::sort(curve.begin(), curve.end());
  // Upper staircase: the best Pd achievable at or below each Pf.
  for (std::size_t i = 1; i < curve.size(); ++i) {
    curve[i].second = std::max(curve[i].second, curve[i - 1].second);
  }
  const auto hi = std::upper_bound(
      curve.begin(), curve.end(), target_pf,
      [](double x, const auto& pt) { return x < pt.first; });
  if (hi == curve.end()) return curve.back().second;
  if (hi == curve.begin()) return hi->second;
  const auto lo = std::prev(hi);
  if (lo->first == target_pf) return lo->second;
  const double t = (target_pf - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

std::vector<SurfacePoint> decision_surface(const FuzzySystem& system,
                                           int fixed_index, double fixed_value,
                                           int resolution) {
  if (fixed_index < 0 || fixed_index >= static_cast<int>(kFuzzyInputs)) {
    throw std::invalid_argument("decision_surface: fixed index must be 0, 1 or 2");
  }
  if (resolution < 2) {
    throw std::invalid_argument("decision_surface: resolution must be >= 2");
  }
  std::array<int, 2> free{};
  for (int i = 0, j = 0; i < static_cast<int>(kFuzzyInputs); ++i) {
    if (i != fixed_index) free[j++] = i;
  }
  const auto& inputs = system.options().inputs;
  const Eigen::ArrayXd xs = universe_grid(inputs[free[0]].universe, resolution);
  const Eigen::ArrayXd ys = universe_grid(inputs[free[1]].universe, resolution);

  std::vector<SurfacePoint> out;
  out.reserve(static_cast<std::size_t>(resolution) * resolution);
  FuzzyInputs point{};
  point[fixed_index] = fixed_value;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    for (Eigen::Index j = 0; j < ys.size(); ++j) {
      point[free[0]] = xs[i];
      point[free[1]] = ys[j];
      out.push_back({xs[i], ys[j], evaluate(system, point)});
    }
  }
  return out;
}

std::vector<SurfacePoint> decision_surface(const ExperimentConfig& config,
                                           int fixed_index, double fixed_value,
                                           int resolution) {
  return decision_surface(build_fuzzy_system(config), fixed_index, fixed_value,
                          resolution);
}

bool ValidationTable::within(double tolerance) const {
  return std::all_of(rows.begin(), rows.end(), [tolerance](const ValidationRow& r) {
    return r.abs_error <= tolerance;
  });
}

ValidationTable validate_theory(const ExperimentConfig& config,
                                const std::vector<double>& pf_grid,
                                const RunOptions& options) {
  ValidationTable table;
  if (pf_grid.empty()) return table;
  for (double pf : pf_grid) {
    if (!(pf > 0.0 && pf < 1.0)) {
      throw std::domain_error("validate_theory: every target Pf must lie in (0, 1)");
    }
  }

  const Experiment experiment(config);
  const auto draws = experiment.draw_all(options);
  DetectorConfig detector = config.detector();
  const double snr = config.sensing.snr_linear();

  for (double pf : pf_grid) {
    const double gamma = threshold_for_pf(detector, pf);
    std::int64_t n0 = 0, n1 = 0, fa = 0, det = 0;
    for (const auto& draw : draws) {
      const bool h1 = draw.truth == Hypothesis::H1;
      for (double s : draw.statistics) {
        const int d = decide(s, gamma);
        if (h1) {
          ++n1;
          det += d;
        } else {
          ++n0;
          fa += d;
        }
      }
    }
    ValidationRow row;
    row.target_pf = pf;
    row.theoretical_pd = pd_from_pf(config.n_samples, snr, pf);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.empirical_pd = n1 ? static_cast<double>(det) / n1 : nan;
    row.abs_error = std::abs(row.empirical_pd - row.theoretical_pd);
    row.empirical_pf = n0 ? static_cast<double>(fa) / n0 : nan;
    row.pf_std_error = n0 ? std::sqrt(pf * (1.0 - pf) / n0) : nan;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace coopsense
