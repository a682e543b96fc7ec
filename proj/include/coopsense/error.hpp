// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coopsense {

/// Invalid or inconsistent configuration. Carries every violation found, not
/// only the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
  explicit ConfigError(const std::string& violation)
      : ConfigError(std::vector<std::string>{violation}) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid configuration:";
    for (const auto& item : items) out += "\n  - " + item;
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace coopsense
