// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "coopsense/harness.hpp"

namespace coopsense {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points);
void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points);
void write_validation_csv(std::ostream& out, const ValidationTable& table);

/// Header row for records with n_users users.
void write_trial_header(std::ostream& out, int n_users);
void write_trial_row(std::ostream& out, const TrialRecord& record);

}  // namespace coopsense
