// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coopsense/detector.hpp"
#include "coopsense/error.hpp"

namespace coopsense {

FusionKind parse_fusion_kind(std::string_view name) {
  if (name == "and") return FusionKind::HardAnd;
  if (name == "or") return FusionKind::HardOr;
  if (name == "majority") return FusionKind::HardMajority;
  if (name == "kofn") return FusionKind::HardKofN;
  if (name == "fuzzy_information") return FusionKind::FuzzyInformation;
  if (name == "fuzzy_decision") return FusionKind::FuzzyDecision;
  throw std::invalid_argument("unknown fusion kind '" + std::string(name) + "'");
}

std::string_view to_string(FusionKind kind) {
  switch (kind) {
    case FusionKind::HardAnd: return "and";
    case FusionKind::HardOr: return "or";
    case FusionKind::HardMajority: return "majority";
    case FusionKind::HardKofN: return "kofn";
    case FusionKind::FuzzyInformation: return "fuzzy_information";
    case FusionKind::FuzzyDecision: return "fuzzy_decision";
  }
  return "?";
}

MaliceMode parse_malice_mode(std::string_view name) {
  if (name == "flip") return MaliceMode::FlipDecision;
  if (name == "always_present") return MaliceMode::AlwaysPresent;
  if (name == "always_absent") return MaliceMode::AlwaysAbsent;
  if (name == "statistic_swap") return MaliceMode::StatisticSwap;
  throw std::invalid_argument("unknown malice mode '" + std::string(name) + "'");
}

std::string_view to_string(MaliceMode mode) {
  switch (mode) {
    case MaliceMode::FlipDecision: return "flip";
    case MaliceMode::AlwaysPresent: return "always_present";
    case MaliceMode::AlwaysAbsent: return "always_absent";
    case MaliceMode::StatisticSwap: return "statistic_swap";
  }
  return "?";
}

bool FusionStrategy::is_hard() const {
  return kind != FusionKind::FuzzyInformation && kind != FusionKind::FuzzyDecision;
}

int FusionStrategy::votes_required(int n_users) const {
  switch (kind) {
    case FusionKind::HardAnd: return n_users;
    case FusionKind::HardOr: return 1;
    case FusionKind::HardMajority: return (n_users + 2) / 2;
    case FusionKind::HardKofN: return k;
    default:
      throw std::invalid_argument("votes_required: not a hard fusion rule");
  }
}

int fuse_hard(std::span<const int> decisions, const FusionStrategy& strategy) {
  if (!strategy.is_hard()) {
    throw std::invalid_argument("fuse_hard: fuzzy strategy passed to a hard rule");
  }
  if (decisions.empty()) throw std::invalid_argument("fuse_hard: no decisions");
  const int n = static_cast<int>(decisions.size());
  const int k = strategy.votes_required(n);
  if (k < 1 || k > n) throw std::invalid_argument("fuse_hard: k must lie in [1, n]");
  const auto ones = std::count_if(decisions.begin(), decisions.end(),
                                  [](int d) { return d != 0; });
  return ones >= k ? 1 : 0;
}

double kofn_pd_closed_form(int n, int k, double p) {
  if (n < 1 || k < 0 || k > n) {
    throw std::invalid_argument("kofn_pd_closed_form: need 0 <= k <= n, n >= 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("kofn_pd_closed_form: probability outside [0, 1]");
  }
  double total = 0.0;
  double binom = 1.0;  // C(n, j)
  for (int j = 0; j <= n; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    if (j >= k) total += binom * std::pow(p, j) * std::pow(1.0 - p, n - j);
  }
  return std::clamp(total, 0.0, 1.0);
}

FuzzyVerdict fuse_fuzzy(std::span<const FusionReport> reports,
                        const FuzzySystem& system,
                        const FusionStrategy& strategy) {
  if (!strategy.is_fuzzy()) {
    throw std::invalid_argument("fuse_fuzzy: hard strategy passed to the fuzzy path");
  }
  const FuzzyMode wanted = strategy.kind == FusionKind::FuzzyInformation
                               ? FuzzyMode::Information
                               : FuzzyMode::Decision;
  if (system.mode() != wanted) {
    throw ConfigError("fuzzy system mode does not match the fusion strategy");
  }
  if (reports.size() != kFuzzyInputs) {
    throw std::invalid_argument("fuse_fuzzy: exactly three reports are required");
  }
  FuzzyInputs inputs{};
  for (std::size_t i = 0; i < kFuzzyInputs; ++i) inputs[i] = reports[i].received;
  FuzzyVerdict verdict;
  verdict.crisp_value = evaluate(system, inputs);
  verdict.decision = verdict.crisp_value >= strategy.fuzzy_threshold ? 1 : 0;
  return verdict;
}

namespace {

double swapped_statistic(RngStream& stream, const MaliceContext& context) {
  SensingChannelConfig sensing = context.sensing;
  sensing.model = SensingModel::Awgn;
  const Hypothesis opposite =
      context.truth == Hypothesis::H1 ? Hypothesis::H0 : Hypothesis::H1;
  const std::uint64_t seed = stream();
  const std::uint64_t trial = stream.trial_index();
  RngStreamSet streams{RngStream(seed, trial, StreamRole::SensingNoise),
                       RngStream(seed, trial, StreamRole::PrimarySignal),
                       RngStream(seed, trial, StreamRole::SensingFade),
                       RngStream(seed, trial, StreamRole::ReportFade)};
  const auto window = realize_sensing(sensing, opposite, context.n_samples, 1, streams);
  return energy_statistic(window.received_samples.front());
}

}  // namespace

FusionReport apply_malice(const FusionReport& report, const MaliceModel& model,
                          RngStream& stream, const MaliceContext& context) {
  const bool swap = model.mode == MaliceMode::StatisticSwap;
  if (swap != context.statistic_payload) {
    throw std::invalid_argument(
        swap ? "apply_malice: statistic_swap requires information fusion"
             : "apply_malice: decision malice modes require decision payloads");
  }
  FusionReport out = report;
  switch (model.mode) {
    case MaliceMode::FlipDecision:
      out.local_decision = report.local_decision ? 0 : 1;
      break;
    case MaliceMode::AlwaysPresent:
      out.local_decision = 1;
      break;
    case MaliceMode::AlwaysAbsent:
      out.local_decision = 0;
      break;
    case MaliceMode::StatisticSwap:
      out.transmitted = swapped_statistic(stream, context);
      return out;
  }
  out.transmitted = antipodal(out.local_decision);
  return out;
}

}  // namespace coopsense
