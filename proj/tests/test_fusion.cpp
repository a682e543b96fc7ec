// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "coopsense/error.hpp"
#include "coopsense/fusion.hpp"

using namespace coopsense;

namespace {

// P(at least k of n) by enumerating all 2^n outcomes.
double brute_force_kofn(int n, int k, double p) {
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int ones = __builtin_popcount(mask);
    if (ones >= k) total += std::pow(p, ones) * std::pow(1.0 - p, n - ones);
  }
  return total;
}

std::vector<FusionReport> received(std::array<double, 3> y) {
  std::vector<FusionReport> reports;
  for (int i = 0; i < 3; ++i) reports.push_back({i, y[i], y[i], y[i] > 0.0 ? 1 : 0});
  return reports;
}

}  // namespace

TEST_CASE("hard rule examples") {
  const std::vector<int> one{0, 0, 1}, two{1, 1, 0};
  CHECK(fuse_hard(one, FusionStrategy::or_rule()) == 1);
  CHECK(fuse_hard(two, FusionStrategy::and_rule()) == 0);
  CHECK(fuse_hard(two, FusionStrategy::majority()) == 1);
  CHECK(fuse_hard(one, FusionStrategy::majority()) == 0);
  CHECK(fuse_hard(std::vector<int>{1, 1, 1}, FusionStrategy::and_rule()) == 1);
  CHECK(fuse_hard(std::vector<int>{0, 0, 0}, FusionStrategy::or_rule()) == 0);
}

TEST_CASE("hard rules are k-out-of-n rules") {
  for (int n = 1; n <= 7; ++n) {
    CHECK(FusionStrategy::and_rule().votes_required(n) == n);
    CHECK(FusionStrategy::or_rule().votes_required(n) == 1);
    CHECK(FusionStrategy::majority().votes_required(n) == (n + 2) / 2);
    CHECK(FusionStrategy::majority().votes_required(n) ==
          static_cast<int>(std::ceil((n + 1) / 2.0)));
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> d(n);
      for (int i = 0; i < n; ++i) d[i] = (mask >> i) & 1;
      const int ones = __builtin_popcount(mask);
      CHECK(fuse_hard(d, FusionStrategy::and_rule()) == fuse_hard(d, FusionStrategy::k_of_n(n)));
      CHECK(fuse_hard(d, FusionStrategy::or_rule()) == fuse_hard(d, FusionStrategy::k_of_n(1)));
      for (int k = 1; k <= n; ++k) {
        CHECK(fuse_hard(d, FusionStrategy::k_of_n(k)) == (ones >= k ? 1 : 0));
      }
    }
  }
}

TEST_CASE("fuse_hard contract") {
  const std::vector<int> d{1, 0, 1};
  CHECK_THROWS_AS(fuse_hard(d, FusionStrategy::fuzzy_decision()), std::invalid_argument);
  CHECK_THROWS_AS(fuse_hard(std::vector<int>{}, FusionStrategy::or_rule()),
                  std::invalid_argument);
  CHECK_THROWS_AS(fuse_hard(d, FusionStrategy::k_of_n(0)), std::invalid_argument);
  CHECK_THROWS_AS(fuse_hard(d, FusionStrategy::k_of_n(4)), std::invalid_argument);
}

TEST_CASE("k-of-n closed form") {
  CHECK(kofn_pd_closed_form(3, 1, 0.5) == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(kofn_pd_closed_form(3, 3, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  for (int n = 1; n <= 9; ++n) {
    CHECK(kofn_pd_closed_form(n, 1, 0.0) == 0.0);
    for (int k = 1; k <= n; ++k) {
      for (double p : {0.0, 0.01, 0.1, 0.271, 0.5, 0.9, 1.0}) {
        CHECK(kofn_pd_closed_form(n, k, p) == doctest::Approx(brute_force_kofn(n, k, p)).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(kofn_pd_closed_form(3, 4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(kofn_pd_closed_form(3, 1, 1.5), std::domain_error);
}

TEST_CASE("OR dominates MAJORITY dominates AND") {
  for (double p = 0.01; p < 1.0; p += 0.01) {
    const double or_pd = kofn_pd_closed_form(3, 1, p);
    const double maj_pd = kofn_pd_closed_form(3, 2, p);
    const double and_pd = kofn_pd_closed_form(3, 3, p);
    CHECK(or_pd >= maj_pd);
    CHECK(maj_pd >= and_pd);
  }
}

TEST_CASE("simulated k-of-n votes match the binomial") {
  constexpr int trials = 100000;
  const double p = 0.3;
  for (int k = 1; k <= 3; ++k) {
    int fired = 0;
    for (int t = 0; t < trials; ++t) {
      RngStream s(55, t, StreamRole::Hypothesis);
      std::array<int, 3> d{};
      for (int& bit : d) bit = s.uniform() < p ? 1 : 0;
      fired += fuse_hard(d, FusionStrategy::k_of_n(k));
    }
    const double expected = kofn_pd_closed_form(3, k, p);
    const double se = std::sqrt(expected * (1.0 - expected) / trials);
    CHECK(std::abs(static_cast<double>(fired) / trials - expected) < 3.0 * se);
  }
}

TEST_CASE("fuzzy fusion on the worked examples") {
  const FuzzySystem info(FuzzyMode::Information);
  const FuzzySystem dec(FuzzyMode::Decision);

  const auto a = fuse_fuzzy(received({56.9, 82.2, 85.8}), info,
                            FusionStrategy::fuzzy_information());
  CHECK(a.decision == 1);
  CHECK(std::abs(a.crisp_value - 0.695) <= 0.10);

  const auto b = fuse_fuzzy(received({0.145, -0.506, -0.217}), dec,
                            FusionStrategy::fuzzy_decision());
  CHECK(b.decision == 1);
  CHECK(std::abs(b.crisp_value - 0.695) <= 0.10);

  const auto c = fuse_fuzzy(received({-3.0, -3.0, -3.0}), dec,
                            FusionStrategy::fuzzy_decision());
  CHECK(c.crisp_value < 0.5);
  CHECK(c.decision == 0);

  // The cut is inclusive.
  const auto at = fuse_fuzzy(received({0.145, -0.506, -0.217}), dec,
                             FusionStrategy::fuzzy_decision(b.crisp_value));
  CHECK(at.decision == 1);
}

TEST_CASE("fuse_fuzzy contract") {
  const FuzzySystem info(FuzzyMode::Information);
  const auto reports = received({1.0, 1.0, 1.0});
  CHECK_THROWS_AS(fuse_fuzzy(reports, info, FusionStrategy::fuzzy_decision()), ConfigError);
  CHECK_THROWS_AS(fuse_fuzzy(reports, info, FusionStrategy::majority()), std::invalid_argument);
  const std::vector<FusionReport> two(reports.begin(), reports.begin() + 2);
  CHECK_THROWS_AS(fuse_fuzzy(two, info, FusionStrategy::fuzzy_information()),
                  std::invalid_argument);
}

TEST_CASE("fuse_fuzzy ignores report order") {
  const FuzzySystem dec(FuzzyMode::Decision);
  std::array<double, 3> y{0.9, -2.2, 0.3};
  std::sort(y.begin(), y.end());
  const double ref = fuse_fuzzy(received(y), dec, FusionStrategy::fuzzy_decision()).crisp_value;
  do {
    CHECK(fuse_fuzzy(received(y), dec, FusionStrategy::fuzzy_decision()).crisp_value == ref);
  } while (std::next_permutation(y.begin(), y.end()));
}

TEST_CASE("one dissenting report cannot outvote two non-negative ones") {
  // Two inputs >= 0 have LOW = 0, so no ABSENT rule fires at all.
  const FuzzySystem dec(FuzzyMode::Decision);
  for (double a = 0.0; a <= 3.0; a += 0.25) {
    for (double b = 0.0; b <= 3.0; b += 0.25) {
      for (double c = -3.0; c <= 3.0; c += 0.25) {
        for (auto y : {std::array{a, b, c}, std::array{c, a, b}, std::array{a, c, b}}) {
          const auto v = fuse_fuzzy(received(y), dec, FusionStrategy::fuzzy_decision());
          CHECK(v.decision == 1);
          CHECK(v.crisp_value == doctest::Approx(0.75).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("one dissenting report cannot outvote two strongly negative ones") {
  // Below -1.5, LOW > 1/2 > MEDIUM, and every input has some term >= 1/2, so
  // an ABSENT rule out-fires every PRESENT rule.
  const FuzzySystem dec(FuzzyMode::Decision);
  for (double a = -3.0; a < -1.5; a += 0.25) {
    for (double b = -3.0; b < -1.5; b += 0.25) {
      for (double c = -3.0; c <= 3.0; c += 0.25) {
        const auto v = fuse_fuzzy(received({a, b, c}), dec, FusionStrategy::fuzzy_decision());
        CHECK(v.decision == 0);
      }
    }
  }
}

TEST_CASE("two mildly negative reports do not guarantee ABSENT") {
  // In the lower third but above -1.5 the MEDIUM term is the stronger one.
  const FuzzySystem dec(FuzzyMode::Decision);
  const auto v = fuse_fuzzy(received({-1.0, -1.0, 1.5}), dec, FusionStrategy::fuzzy_decision());
  CHECK(v.crisp_value > 0.5);
  CHECK(v.decision == 1);
}

TEST_CASE("decision malice modes") {
  RngStream s(1, 0, StreamRole::Malice);
  const MaliceContext ctx;
  const FusionReport honest{2, 1.0, 1.0, 1};

  const auto flipped = apply_malice(honest, {2, MaliceMode::FlipDecision}, s, ctx);
  CHECK(flipped.local_decision == 0);
  CHECK(flipped.transmitted == -1.0);
  CHECK(flipped.user_index == 2);
  const auto back = apply_malice(flipped, {2, MaliceMode::FlipDecision}, s, ctx);
  CHECK(back.local_decision == 1);
  CHECK(back.transmitted == 1.0);

  for (int d : {0, 1}) {
    const FusionReport r{0, antipodal(d), antipodal(d), d};
    CHECK(apply_malice(r, {0, MaliceMode::AlwaysAbsent}, s, ctx).transmitted == -1.0);
    CHECK(apply_malice(r, {0, MaliceMode::AlwaysPresent}, s, ctx).transmitted == 1.0);
  }
  CHECK_THROWS_AS(apply_malice(honest, {2, MaliceMode::StatisticSwap}, s, ctx),
                  std::invalid_argument);
  MaliceContext info = ctx;
  info.statistic_payload = true;
  CHECK_THROWS_AS(apply_malice(honest, {2, MaliceMode::FlipDecision}, s, info),
                  std::invalid_argument);
}

TEST_CASE("statistic swap reports the opposite hypothesis") {
  MaliceContext ctx;
  ctx.statistic_payload = true;
  ctx.n_samples = 10;
  ctx.sensing.snr_db = 5.0;
  constexpr int trials = 20000;
  for (Hypothesis truth : {Hypothesis::H1, Hypothesis::H0}) {
    ctx.truth = truth;
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
      RngStream s(3, t, StreamRole::Malice);
      const auto r = apply_malice({0, 123.0, 123.0, 1}, {0, MaliceMode::StatisticSwap}, s, ctx);
      REQUIRE(r.transmitted >= 0.0);
      CHECK(r.received == 123.0);
      sum += r.transmitted;
      sum_sq += r.transmitted * r.transmitted;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
    const double expected = truth == Hypothesis::H1 ? 10.0 : 10.0 * (1.0 + ctx.sensing.snr_linear());
    CHECK(std::abs(mean - expected) < 3.0 * se);
  }
}

TEST_CASE("names round-trip") {
  for (auto k : {FusionKind::HardAnd, FusionKind::HardOr, FusionKind::HardMajority,
                 FusionKind::HardKofN, FusionKind::FuzzyInformation, FusionKind::FuzzyDecision}) {
    CHECK(parse_fusion_kind(to_string(k)) == k);
  }
  for (auto m : {MaliceMode::FlipDecision, MaliceMode::AlwaysPresent, MaliceMode::AlwaysAbsent,
                 MaliceMode::StatisticSwap}) {
    CHECK(parse_malice_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_fusion_kind("xor"), std::invalid_argument);
  CHECK_THROWS_AS(parse_malice_mode("lie"), std::invalid_argument);
  CHECK(slice_report(0.0) == 0);
  CHECK(slice_report(1e-300) == 1);
  CHECK(antipodal(0) == -1.0);
  CHECK(antipodal(1) == 1.0);
}
