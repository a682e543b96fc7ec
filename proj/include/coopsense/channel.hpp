// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "coopsense/numerics.hpp"

namespace coopsense {

enum class Hypothesis { H0, H1 };

enum class SensingModel { Awgn, RayleighFlat };

/// Real: each of the N samples is a real Gaussian with variance sigma^2 (the
/// imaginary part is zero), which is the N = 2WT real-sample model whose
/// energy has mean N sigma^2 and variance 2N sigma^4.
/// Complex: CN(0, sigma^2) samples; the energy variance halves to N sigma^4.
enum class SampleDomain { Real, Complex };

/// ConstantModulus: |x(n)| = 1 with random sign (Real) or phase (Complex),
/// giving the non-central chi-square statistic.
/// Gaussian: unit-power Gaussian x(n).
enum class SignalModel { ConstantModulus, Gaussian };

struct SensingChannelConfig {
  SensingModel model = SensingModel::Awgn;
  double snr_db = 0.0;
  double noise_variance = 1.0;
  double fading_mean_square = 1.0;
  SampleDomain domain = SampleDomain::Real;
  SignalModel signal = SignalModel::ConstantModulus;

  double snr_linear() const;
  void validate() const;
};

enum class ReportingModel { Ideal, Awgn, RayleighAwgn };

struct ReportingChannelConfig {
  ReportingModel model = ReportingModel::Ideal;
  double noise_variance = 0.0;
  double fading_mean_square = 1.0;

  void validate() const;
};

struct ChannelRealization {
  Hypothesis hypothesis = Hypothesis::H0;
  std::vector<double> sensing_gains;       // |h_i|
  std::vector<VectorXc> received_samples;  // r_i(n), N per user
  std::vector<double> reporting_gains;     // |g_i|
};

/// Streams consumed by one sensing window. Construct them from a single
/// (seed, trial) pair with RngStreamSet::for_trial.
struct RngStreamSet {
  RngStream sensing_noise;
  RngStream primary_signal;
  RngStream sensing_fade;
  RngStream report_fade;

  static RngStreamSet for_trial(std::uint64_t master_seed,
                                std::uint64_t trial_index);
};

/// Draws r_i(n) = w_i(n) under H0 and r_i(n) = h_i x_i(n) + w_i(n) under H1.
///
/// Under Awgn, |h_i| = sqrt(snr * sigma^2) for unit-power x_i. Under
/// RayleighFlat one |h_i| per window is drawn with E|h_i|^2 =
/// fading_mean_square and the signal is rescaled so that the average SNR is
/// snr_db. reporting_gains is left empty; realize_reporting_gains fills it.
ChannelRealization realize_sensing(const SensingChannelConfig& config,
                                   Hypothesis hypothesis, int n_samples,
                                   int n_users, RngStreamSet& streams);

/// Per-user reporting-channel magnitudes |g_i|: 1 unless the model fades.
std::vector<double> realize_reporting_gains(
    const ReportingChannelConfig& config, int n_users, RngStream& stream);

/// y = g d + eta with real eta ~ N(0, sigma_eta^2). Ideal is the identity and
/// consumes no randomness; Awgn ignores the gain.
double transport_report(const ReportingChannelConfig& config, double payload,
                        double gain, RngStream& noise_stream);

}  // namespace coopsense
