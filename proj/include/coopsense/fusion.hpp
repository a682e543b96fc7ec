// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string_view>

#include "coopsense/channel.hpp"
#include "coopsense/fuzzy.hpp"

namespace coopsense {

enum class FusionKind {
  HardAnd,
  HardOr,
  HardMajority,
  HardKofN,
  FuzzyInformation,
  FuzzyDecision,
};

FusionKind parse_fusion_kind(std::string_view name);
std::string_view to_string(FusionKind kind);

struct FusionStrategy {
  FusionKind kind = FusionKind::HardMajority;
  int k = 1;  // only read for HardKofN
  double fuzzy_threshold = 0.5;

  static FusionStrategy and_rule() { return {FusionKind::HardAnd}; }
  static FusionStrategy or_rule() { return {FusionKind::HardOr}; }
  static FusionStrategy majority() { return {FusionKind::HardMajority}; }
  static FusionStrategy k_of_n(int k) { return {FusionKind::HardKofN, k}; }
  static FusionStrategy fuzzy_information(double threshold = 0.5) {
    return {FusionKind::FuzzyInformation, 1, threshold};
  }
  static FusionStrategy fuzzy_decision(double threshold = 0.5) {
    return {FusionKind::FuzzyDecision, 1, threshold};
  }

  bool is_hard() const;
  bool is_fuzzy() const { return !is_hard(); }
  /// Users report raw energy statistics rather than bits.
  bool reports_statistics() const { return kind == FusionKind::FuzzyInformation; }

  /// The k of the equivalent k-out-of-n rule. AND = n, OR = 1,
  /// MAJORITY = ceil((n + 1) / 2).
  int votes_required(int n_users) const;
};

enum class MaliceMode { FlipDecision, AlwaysPresent, AlwaysAbsent, StatisticSwap };

MaliceMode parse_malice_mode(std::string_view name);
std::string_view to_string(MaliceMode mode);

struct MaliceModel {
  int user_index = 0;
  MaliceMode mode = MaliceMode::FlipDecision;
};

struct FusionReport {
  int user_index = 0;
  double transmitted = 0.0;  // s_i, or the antipodal bit 2 d_i - 1
  double received = 0.0;     // y_i at the fusion center
  int local_decision = 0;

  friend bool operator==(const FusionReport&, const FusionReport&) = default;
};

/// Bit {0, 1} to the antipodal reporting symbol {-1, +1}.
inline double antipodal(int bit) { return bit ? 1.0 : -1.0; }

/// Hard decision recovered from a received antipodal symbol.
inline int slice_report(double received) { return received > 0.0 ? 1 : 0; }

/// k-out-of-n vote. Throws std::invalid_argument for fuzzy strategies, empty
/// input, or k outside [1, n].
int fuse_hard(std::span<const int> decisions, const FusionStrategy& strategy);

/// P(at least k of n independent users fire), each with probability p.
double kofn_pd_closed_form(int n, int k, double per_user_probability);

struct FuzzyVerdict {
  double crisp_value = 0.0;
  int decision = 0;
};

/// Evaluates the fuzzy system on the received values of exactly three
/// reports. Throws ConfigError when the system was built for the other
/// fusion mode, std::invalid_argument for a hard strategy.
FuzzyVerdict fuse_fuzzy(std::span<const FusionReport> reports,
                        const FuzzySystem& system,
                        const FusionStrategy& strategy);

/// What a malicious user needs to know to forge a report.
struct MaliceContext {
  bool statistic_payload = false;  // information fusion
  Hypothesis truth = Hypothesis::H0;
  int n_samples = 10;
  SensingChannelConfig sensing;  // snr and noise used for StatisticSwap
};

/// Corrupts a report before it enters the reporting channel.
///
/// FlipDecision, AlwaysPresent and AlwaysAbsent rewrite the local decision
/// and its antipodal payload. StatisticSwap replaces s_i by a fresh energy
/// statistic simulated under the opposite hypothesis (Awgn at the configured
/// SNR). Mixing a decision mode with a statistic payload, or the reverse,
/// throws std::invalid_argument.
FusionReport apply_malice(const FusionReport& report, const MaliceModel& model,
                          RngStream& stream, const MaliceContext& context);

}  // namespace coopsense
