// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace coopsense {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points) {
  out << "param,pf,pd,n_h0,n_h1\n";
  for (const auto& p : points) {
    out << format_double(p.operating_parameter) << ',' << format_double(p.empirical_pf)
        << ',' << format_double(p.empirical_pd) << ',' << p.n_h0 << ',' << p.n_h1
        << '\n';
  }
}

void write_surface_csv(std::ostream& out, const std::vector<SurfacePoint>& points) {
  out << "x,y,value\n";
  for (const auto& p : points) {
    out << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(p.value) << '\n';
  }
}

void write_validation_csv(std::ostream& out, const ValidationTable& table) {
  out << "target_pf,theoretical_pd,empirical_pd,abs_error,empirical_pf,pf_std_error\n";
  for (const auto& r : table.rows) {
    out << format_double(r.target_pf) << ',' << format_double(r.theoretical_pd) << ','
        << format_double(r.empirical_pd) << ',' << format_double(r.abs_error) << ','
        << format_double(r.empirical_pf) << ',' << format_double(r.pf_std_error)
        << '\n';
  }
}

void write_trial_header(std::ostream& out, int n_users) {
  out << "trial,truth";
  for (const char* field : {"s", "d", "tx", "y"}) {
    for (int u = 1; u <= n_users; ++u) out << ',' << field << u;
  }
  out << ",crisp,decision\n";
}

void write_trial_row(std::ostream& out, const TrialRecord& record) {
  out << record.trial_index << ',' << (record.truth == Hypothesis::H1 ? "h1" : "h0");
  for (double s : record.statistics) out << ',' << format_double(s);
  for (const auto& r : record.reports) out << ',' << r.local_decision;
  for (const auto& r : record.reports) out << ',' << format_double(r.transmitted);
  for (const auto& r : record.reports) out << ',' << format_double(r.received);
  out << ',' << (record.crisp_value ? format_double(*record.crisp_value) : "")
      << ',' << record.decision << '\n';
}

}  // namespace coopsense
