// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Core>

namespace coopsense {

using VectorXr = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;

/// Standard Gaussian upper-tail probability Q(x) = P(Z > x).
/// Throws std::domain_error for non-finite x.
double q_function(double x);

/// Inverse of q_function on the open interval (0, 1).
/// Throws std::domain_error outside (0, 1).
double q_inverse(double p);

/// Independent substream selector. Each role in a trial owns its own
/// generator so that adding draws to one role never shifts another.
enum class StreamRole : std::uint8_t {
  SensingNoise,
  PrimarySignal,
  SensingFade,
  ReportNoise,
  ReportFade,
  Malice,
  Hypothesis,
};

/// xoshiro256** seeded by a SplitMix64 hash of (master_seed, trial, role).
///
/// The substream is a pure function of the triple, so trial k can be
/// generated without touching trial k-1 and trials may run in any order.
/// Output sequences are bit-identical on every platform; the floating
/// point transforms below avoid the implementation-defined std::*_distribution.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t trial_index,
            StreamRole role);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t trial_index() const { return trial_index_; }
  StreamRole role() const { return role_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t master_seed_;
  std::uint64_t trial_index_;
  StreamRole role_;
  // Box-Muller produces pairs; the spare is cached here.
  double spare_normal_ = 0.0;
  bool has_spare_ = false;

  friend double standard_normal(RngStream& stream);
};

/// One N(0, 1) draw (polar Box-Muller).
double standard_normal(RngStream& stream);

VectorXr sample_gaussian(RngStream& stream, double mean, double variance,
                         Eigen::Index count);

/// Circularly symmetric CN(0, variance): real and imaginary parts each carry
/// variance / 2, so E|w|^2 = variance.
VectorXc sample_complex_gaussian(RngStream& stream, double variance,
                                 Eigen::Index count);

/// Magnitude of a CN(0, mean_square) draw, so E[g^2] = mean_square.
double sample_rayleigh_gain(RngStream& stream, double mean_square);

}  // namespace coopsense
