// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>

#include <Eigen/Core>

#include "coopsense/channel.hpp"

namespace coopsense {

struct DetectorConfig {
  int n_samples = 10;  // N = 2WT
  double noise_variance = 1.0;
  double threshold = 0.0;
  std::optional<double> bandwidth_hz;
  std::optional<double> window_seconds;

  void validate() const;
};

/// Builds a config whose N is the time-bandwidth product round(2 W T).
DetectorConfig detector_from_bandwidth(double bandwidth_hz,
                                       double window_seconds,
                                       double noise_variance);

struct DetectorPerformance {
  double p_false_alarm = 0.0;
  double p_detection = 0.0;
  double p_miss = 1.0;
};

struct StatisticMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Sum of |r(n)|^2 over the window. Works for real or complex sample vectors.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real energy_statistic(
    const Eigen::MatrixBase<Derived>& samples) {
  if (samples.size() == 0) {
    throw std::domain_error("energy_statistic: empty sample window");
  }
  return samples.squaredNorm();
}

/// Gaussian-approximation moments of the energy statistic.
StatisticMoments statistic_moments(const DetectorConfig& config, double snr,
                                   Hypothesis hypothesis);

double pf_theoretical(const DetectorConfig& config);
double pd_theoretical(const DetectorConfig& config, double snr);

/// Pd at the threshold that yields target_pf. Obtained by eliminating the
/// threshold between the Pf and Pd expressions, so sigma^2 cancels:
///   Q((Qinv(Pf) sqrt(2N) - N snr) / sqrt(2N (1 + 2 snr))).
double pd_from_pf(int n_samples, double snr, double target_pf);

/// gamma = sigma^2 (Qinv(target_pf) sqrt(2N) + N). Ignores config.threshold.
double threshold_for_pf(const DetectorConfig& config, double target_pf);

DetectorPerformance performance(const DetectorConfig& config, double snr);

/// Local hard decision; the boundary is inclusive.
inline int decide(double statistic, double threshold) {
  return statistic >= threshold ? 1 : 0;
}

}  // namespace coopsense
