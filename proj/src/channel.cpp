// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coopsense {

double SensingChannelConfig::snr_linear() const {
  return std::pow(10.0, snr_db / 10.0);
}

void SensingChannelConfig::validate() const {
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw std::domain_error("sensing noise_variance must be > 0");
  }
  if (!(fading_mean_square > 0.0) || !std::isfinite(fading_mean_square)) {
    throw std::domain_error("sensing fading_mean_square must be > 0");
  }
  if (std::isnan(snr_db)) throw std::domain_error("snr_db is NaN");
}

void ReportingChannelConfig::validate() const {
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
    throw std::domain_error("reporting noise_variance must be >= 0");
  }
  if (!(fading_mean_square > 0.0) || !std::isfinite(fading_mean_square)) {
    throw std::domain_error("reporting fading_mean_square must be > 0");
  }
}

RngStreamSet RngStreamSet::for_trial(std::uint64_t master_seed,
                                     std::uint64_t trial_index) {
  return {
      RngStream(master_seed, trial_index, StreamRole::SensingNoise),
      RngStream(master_seed, trial_index, StreamRole::PrimarySignal),
      RngStream(master_seed, trial_index, StreamRole::SensingFade),
      RngStream(master_seed, trial_index, StreamRole::ReportFade),
  };
}

namespace {

VectorXc draw_noise(const SensingChannelConfig& config, int n_samples,
                    RngStream& stream) {
  if (config.domain == SampleDomain::Complex) {
    return sample_complex_gaussian(stream, config.noise_variance, n_samples);
  }
  return sample_gaussian(stream, 0.0, config.noise_variance, n_samples)
      .cast<std::complex<double>>();
}

VectorXc draw_signal(const SensingChannelConfig& config, int n_samples,
                     RngStream& stream) {
  VectorXc x(n_samples);
  const bool complex_domain = config.domain == SampleDomain::Complex;
  switch (config.signal) {
    case SignalModel::ConstantModulus:
      for (int n = 0; n < n_samples; ++n) {
        if (complex_domain) {
          x[n] = std::polar(1.0, 2.0 * std::numbers::pi * stream.uniform());
        } else {
          x[n] = (stream() >> 63) ? 1.0 : -1.0;
        }
      }
      return x;
    case SignalModel::Gaussian:
      if (complex_domain) return sample_complex_gaussian(stream, 1.0, n_samples);
      return sample_gaussian(stream, 0.0, 1.0, n_samples)
          .cast<std::complex<double>>();
  }
  return x;
}

}  // namespace

ChannelRealization realize_sensing(const SensingChannelConfig& config,
                                   Hypothesis hypothesis, int n_samples,
                                   int n_users, RngStreamSet& streams) {
  if (n_samples < 1 || n_users < 1) {
    throw std::domain_error("realize_sensing: n_samples and n_users must be >= 1");
  }
  config.validate();

  ChannelRealization out;
  out.hypothesis = hypothesis;
  out.sensing_gains.resize(n_users);
  out.received_samples.reserve(n_users);

  const double mean_power = config.snr_linear() * config.noise_variance;
  for (int user = 0; user < n_users; ++user) {
    // Fades are drawn under both hypotheses so the noise stream and the fade
    // stream stay aligned across H0/H1 and across channel models.
    double gain = std::sqrt(mean_power);
    double amplitude = gain;
    if (config.model == SensingModel::RayleighFlat) {
      gain = sample_rayleigh_gain(streams.sensing_fade, config.fading_mean_square);
      amplitude = gain * std::sqrt(mean_power / config.fading_mean_square);
    }
    out.sensing_gains[user] = gain;

    VectorXc r = draw_noise(config, n_samples, streams.sensing_noise);
    if (hypothesis == Hypothesis::H1) {
      r += amplitude * draw_signal(config, n_samples, streams.primary_signal);
    }
    out.received_samples.push_back(std::move(r));
  }
  return out;
}

std::vector<double> realize_reporting_gains(
    const ReportingChannelConfig& config, int n_users, RngStream& stream) {
  std::vector<double> gains(n_users, 1.0);
  if (config.model == ReportingModel::RayleighAwgn) {
    for (auto& g : gains) g = sample_rayleigh_gain(stream, config.fading_mean_square);
  }
  return gains;
}

double transport_report(const ReportingChannelConfig& config, double payload,
                        double gain, RngStream& noise_stream) {
  if (!std::isfinite(payload)) {
    throw std::domain_error("transport_report: payload must be finite");
  }
  switch (config.model) {
    case ReportingModel::Ideal:
      return payload;
    case ReportingModel::Awgn:
      return payload +
             std::sqrt(config.noise_variance) * standard_normal(noise_stream);
    case ReportingModel::RayleighAwgn:
      return gain * payload +
             std::sqrt(config.noise_variance) * standard_normal(noise_stream);
  }
  return payload;
}

}  // namespace coopsense
