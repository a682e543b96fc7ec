// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace coopsense {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

double gaussian_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

void require_nonnegative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::domain_error(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

double q_function(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("q_function: argument must be finite");
  }
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("q_inverse: probability must lie in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -q_inverse(1.0 - p);

  // Q is decreasing; the root for p in (0, 0.5) lies in (0, 40).
  double lo = 0.0;
  double hi = 40.0;
  double x = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = q_function(x) - p;
    if (residual > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x + residual / gaussian_density(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t trial_index,
                     StreamRole role)
    : master_seed_(master_seed), trial_index_(trial_index), role_(role) {
  std::uint64_t key = master_seed;
  key = splitmix64(key) ^ trial_index;
  key = splitmix64(key) ^ static_cast<std::uint64_t>(role);
  key = splitmix64(key);
  for (auto& word : state_) word = splitmix64(key);
}

RngStream::result_type RngStream::operator()() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double standard_normal(RngStream& stream) {
  if (stream.has_spare_) {
    stream.has_spare_ = false;
    return stream.spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * stream.uniform() - 1.0;
    v = 2.0 * stream.uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  stream.spare_normal_ = v * scale;
  stream.has_spare_ = true;
  return u * scale;
}

VectorXr sample_gaussian(RngStream& stream, double mean, double variance,
                         Eigen::Index count) {
  require_nonnegative(variance, "sample_gaussian: variance");
  if (count < 0) throw std::domain_error("sample_gaussian: negative count");
  VectorXr out(count);
  const double sd = std::sqrt(variance);
  for (Eigen::Index i = 0; i < count; ++i) {
    out[i] = mean + sd * standard_normal(stream);
  }
  return out;
}

VectorXc sample_complex_gaussian(RngStream& stream, double variance,
                                 Eigen::Index count) {
  require_nonnegative(variance, "sample_complex_gaussian: variance");
  if (count < 0) {
    throw std::domain_error("sample_complex_gaussian: negative count");
  }
  VectorXc out(count);
  const double sd = std::sqrt(0.5 * variance);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double re = standard_normal(stream);
    const double im = standard_normal(stream);
    out[i] = {sd * re, sd * im};
  }
  return out;
}

double sample_rayleigh_gain(RngStream& stream, double mean_square) {
  if (!(mean_square > 0.0) || !std::isfinite(mean_square)) {
    throw std::domain_error("sample_rayleigh_gain: mean_square must be > 0");
  }
  const double re = standard_normal(stream);
  const double im = standard_normal(stream);
  return std::sqrt(0.5 * mean_square * (re * re + im * im));
}

}  // namespace coopsense
