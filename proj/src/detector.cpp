// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/detector.hpp"

#include <cmath>
#include <limits>

namespace coopsense {

void DetectorConfig::validate() const {
  if (n_samples < 1) throw std::domain_error("detector: n_samples must be >= 1");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw std::domain_error("detector: noise_variance must be > 0");
  }
  if (std::isnan(threshold)) throw std::domain_error("detector: threshold is NaN");
  if (bandwidth_hz && window_seconds) {
    if (!(*bandwidth_hz > 0.0) || !(*window_seconds > 0.0)) {
      throw std::domain_error("detector: bandwidth and window must be > 0");
    }
    if (n_samples != std::lround(2.0 * *bandwidth_hz * *window_seconds)) {
      throw std::domain_error("detector: n_samples must equal round(2 W T)");
    }
  }
}

DetectorConfig detector_from_bandwidth(double bandwidth_hz,
                                       double window_seconds,
                                       double noise_variance) {
  DetectorConfig config;
  config.bandwidth_hz = bandwidth_hz;
  config.window_seconds = window_seconds;
  config.noise_variance = noise_variance;
  config.n_samples =
      static_cast<int>(std::lround(2.0 * bandwidth_hz * window_seconds));
  config.validate();
  return config;
}

StatisticMoments statistic_moments(const DetectorConfig& config, double snr,
                                   Hypothesis hypothesis) {
  const double n = config.n_samples;
  const double s2 = config.noise_variance;
  if (hypothesis == Hypothesis::H0) return {n * s2, 2.0 * n * s2 * s2};
  return {n * s2 * (1.0 + snr), 2.0 * n * s2 * s2 * (1.0 + 2.0 * snr)};
}

namespace {

// Q of a possibly infinite argument; thresholds of +/-inf are legitimate.
double tail(double z) {
  if (z == std::numeric_limits<double>::infinity()) return 0.0;
  if (z == -std::numeric_limits<double>::infinity()) return 1.0;
  return q_function(z);
}

}  // namespace

double pf_theoretical(const DetectorConfig& config) {
  const double n = config.n_samples;
  const double s2 = config.noise_variance;
  return tail((config.threshold - n * s2) / (s2 * std::sqrt(2.0 * n)));
}

double pd_theoretical(const DetectorConfig& config, double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("pd_theoretical: snr must be >= 0");
  const double n = config.n_samples;
  const double s2 = config.noise_variance;
  return tail((config.threshold - n * s2 * (1.0 + snr)) /
              (s2 * std::sqrt(2.0 * n * (1.0 + 2.0 * snr))));
}

double pd_from_pf(int n_samples, double snr, double target_pf) {
  if (!(target_pf > 0.0 && target_pf < 1.0)) {
    throw std::domain_error("pd_from_pf: target_pf must lie in (0, 1)");
  }
  if (!(snr >= 0.0)) throw std::domain_error("pd_from_pf: snr must be >= 0");
  const double n = n_samples;
  return q_function((q_inverse(target_pf) * std::sqrt(2.0 * n) - n * snr) /
                    std::sqrt(2.0 * n * (1.0 + 2.0 * snr)));
}

double threshold_for_pf(const DetectorConfig& config, double target_pf) {
  const double n = config.n_samples;
  return config.noise_variance *
         (q_inverse(target_pf) * std::sqrt(2.0 * n) + n);
}

DetectorPerformance performance(const DetectorConfig& config, double snr) {
  DetectorPerformance perf;
  perf.p_false_alarm = pf_theoretical(config);
  perf.p_detection = pd_theoretical(config, snr);
  perf.p_miss = 1.0 - perf.p_detection;
  return perf;
}

}  // namespace coopsense
