// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string_view>

#include "coopsense/harness.hpp"

namespace coopsense {

/// Parses the JSON experiment document. Unknown top-level keys, type errors
/// and invariant violations are all collected into one ConfigError.
///
///   {
///     "users": 3, "samples": 10, "noise_variance": 1.0, "snr_db": 5.0,
///     "prior_h1": 0.5,
///     "sensing":   {"model": "awgn" | "rayleigh", "fading_mean_square": 1.0,
///                   "domain": "real" | "complex",
///                   "signal": "constant_modulus" | "gaussian"},
///     "reporting": {"model": "ideal" | "awgn" | "rayleigh_awgn",
///                   "noise_variance": 0.1, "fading_mean_square": 1.0},
///     "strategy":  {"kind": "and" | "or" | "majority" | "kofn" |
///                           "fuzzy_information" | "fuzzy_decision",
///                   "k": 2, "fuzzy_threshold": 0.5, "local_pf": 0.1,
///                   "threshold": 17.3 | "inf" | "-inf"},
///     "malice":    [{"user": 0, "mode": "flip" | "always_present" |
///                                       "always_absent" | "statistic_swap"}],
///     "fuzzy":     {"universe": [-3, 3],
///                   "inputs": {"LOW": [a, c, b], "MEDIUM": [...], "HIGH": [...]},
///                   "output": {"ABSENT": [a, c, b], "PRESENT": [...]},
///                   "defuzzifier": "centroid", "resolution": 1001},
///     "trials": 100000, "seed": 42,
///     "metadata":  {...}
///   }
///
/// Only keys that are present override the defaults of ExperimentConfig.
ExperimentConfig parse_config(std::string_view json_text);

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace coopsense
