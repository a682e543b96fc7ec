// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coopsense/error.hpp"

namespace coopsense {

namespace {

using nlohmann::json;

// Collects problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  template <typename T>
  void get(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) {
        problems.push_back(where + key + ": expected a non-negative integer");
        return;
      }
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) {
        problems.push_back(where + key + ": expected an integer");
        return;
      }
    } else {
      if (!v.is_number()) {
        problems.push_back(where + key + ": expected a number");
        return;
      }
    }
    try {
      out = v.get<T>();
    } catch (const json::exception&) {
      problems.push_back(where + key + ": wrong type");
    }
  }

  template <typename Enum, typename Parse>
  void get_enum(const json& obj, const char* key, Enum& out,
                const std::string& where, Parse parse) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      problems.push_back(where + key + ": expected a string");
      return;
    }
    try {
      out = parse(v.get<std::string>());
    } catch (const std::exception& e) {
      problems.push_back(where + key + ": " + e.what());
    }
  }

  bool object(const json& doc, const char* key) {
    if (!doc.contains(key)) return false;
    if (!doc.at(key).is_object()) {
      problems.push_back(std::string(key) + ": expected an object");
      return false;
    }
    return true;
  }

  void unknown_keys(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) problems.push_back(where + key + ": unknown key");
    }
  }

  std::optional<TriangularMf> triangle(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3 ||
        !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
      problems.push_back(where + ": expected [left_foot, peak, right_foot]");
      return std::nullopt;
    }
    return TriangularMf{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
  }

  template <std::size_t N>
  std::optional<std::array<TriangularMf, N>> terms(
      const json& obj, const std::array<const char*, N>& labels,
      const std::string& where) {
    if (!obj.is_object()) {
      problems.push_back(where + ": expected an object of terms");
      return std::nullopt;
    }
    unknown_keys(obj, std::set<std::string>(labels.begin(), labels.end()), where + ".");
    std::array<TriangularMf, N> out{};
    bool ok = true;
    for (std::size_t i = 0; i < N; ++i) {
      if (!obj.contains(labels[i])) {
        problems.push_back(where + "." + labels[i] + ": missing");
        ok = false;
        continue;
      }
      auto mf = triangle(obj.at(labels[i]), where + "." + labels[i]);
      if (mf) out[i] = *mf; else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }
};

SensingModel parse_sensing_model(const std::string& s) {
  if (s == "awgn") return SensingModel::Awgn;
  if (s == "rayleigh") return SensingModel::RayleighFlat;
  throw std::invalid_argument("expected awgn | rayleigh");
}

SampleDomain parse_domain(const std::string& s) {
  if (s == "real") return SampleDomain::Real;
  if (s == "complex") return SampleDomain::Complex;
  throw std::invalid_argument("expected real | complex");
}

SignalModel parse_signal(const std::string& s) {
  if (s == "constant_modulus") return SignalModel::ConstantModulus;
  if (s == "gaussian") return SignalModel::Gaussian;
  throw std::invalid_argument("expected constant_modulus | gaussian");
}

ReportingModel parse_reporting_model(const std::string& s) {
  if (s == "ideal") return ReportingModel::Ideal;
  if (s == "awgn") return ReportingModel::Awgn;
  if (s == "rayleigh_awgn") return ReportingModel::RayleighAwgn;
  throw std::invalid_argument("expected ideal | awgn | rayleigh_awgn");
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("top level must be a JSON object");

  ExperimentConfig cfg;
  Reader r;
  r.unknown_keys(doc,
                 {"users", "samples", "noise_variance", "snr_db", "prior_h1",
                  "sensing", "reporting", "strategy", "malice", "fuzzy", "trials",
                  "seed", "metadata"},
                 "");

  r.get(doc, "users", cfg.n_users, "");
  r.get(doc, "samples", cfg.n_samples, "");
  r.get(doc, "noise_variance", cfg.sensing.noise_variance, "");
  r.get(doc, "snr_db", cfg.sensing.snr_db, "");
  r.get(doc, "prior_h1", cfg.prior_h1, "");
  r.get(doc, "trials", cfg.trials, "");
  r.get(doc, "seed", cfg.seed, "");

  if (r.object(doc, "sensing")) {
    const json& s = doc.at("sensing");
    r.unknown_keys(s, {"model", "fading_mean_square", "domain", "signal"}, "sensing.");
    r.get_enum(s, "model", cfg.sensing.model, "sensing.", parse_sensing_model);
    r.get(s, "fading_mean_square", cfg.sensing.fading_mean_square, "sensing.");
    r.get_enum(s, "domain", cfg.sensing.domain, "sensing.", parse_domain);
    r.get_enum(s, "signal", cfg.sensing.signal, "sensing.", parse_signal);
  }

  if (r.object(doc, "reporting")) {
    const json& s = doc.at("reporting");
    r.unknown_keys(s, {"model", "noise_variance", "fading_mean_square"}, "reporting.");
    r.get_enum(s, "model", cfg.reporting.model, "reporting.", parse_reporting_model);
    r.get(s, "noise_variance", cfg.reporting.noise_variance, "reporting.");
    r.get(s, "fading_mean_square", cfg.reporting.fading_mean_square, "reporting.");
  }

  if (r.object(doc, "strategy")) {
    const json& s = doc.at("strategy");
    r.unknown_keys(s, {"kind", "k", "fuzzy_threshold", "local_pf", "threshold"},
                   "strategy.");
    r.get_enum(s, "kind", cfg.strategy.kind, "strategy.",
               [](const std::string& v) { return parse_fusion_kind(v); });
    r.get(s, "k", cfg.strategy.k, "strategy.");
    r.get(s, "fuzzy_threshold", cfg.strategy.fuzzy_threshold, "strategy.");
    r.get(s, "local_pf", cfg.local_pf, "strategy.");
    if (s.contains("threshold")) {
      const json& t = s.at("threshold");
      constexpr double inf = std::numeric_limits<double>::infinity();
      if (t.is_number()) {
        cfg.local_threshold = t.get<double>();
      } else if (t == "inf") {
        cfg.local_threshold = inf;
      } else if (t == "-inf") {
        cfg.local_threshold = -inf;
      } else if (!t.is_null()) {
        r.problems.push_back("strategy.threshold: expected a number, \"inf\" or \"-inf\"");
      }
    }
  }

  if (doc.contains("malice")) {
    const json& list = doc.at("malice");
    if (!list.is_array()) {
      r.problems.push_back("malice: expected an array");
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "malice[" + std::to_string(i) + "].";
        const json& m = list[i];
        if (!m.is_object()) {
          r.problems.push_back(where + ": expected an object");
          continue;
        }
        r.unknown_keys(m, {"user", "mode"}, where);
        MaliceModel model;
        if (!m.contains("user") || !m.contains("mode")) {
          r.problems.push_back(where + ": user and mode are required");
        }
        r.get(m, "user", model.user_index, where);
        r.get_enum(m, "mode", model.mode, where,
                   [](const std::string& v) { return parse_malice_mode(v); });
        cfg.malice.push_back(model);
      }
    }
  }

  if (r.object(doc, "fuzzy")) {
    const json& f = doc.at("fuzzy");
    r.unknown_keys(f, {"universe", "inputs", "output", "defuzzifier", "resolution"},
                   "fuzzy.");
    if (f.contains("universe")) {
      const json& u = f.at("universe");
      if (u.is_array() && u.size() == 2 && u[0].is_number() && u[1].is_number()) {
        cfg.fuzzy.universe = Universe{u[0].get<double>(), u[1].get<double>()};
      } else {
        r.problems.push_back("fuzzy.universe: expected [lo, hi]");
      }
    }
    if (f.contains("inputs")) {
      cfg.fuzzy.input_terms = r.terms<3>(
          f.at("inputs"), {"LOW", "MEDIUM", "HIGH"}, "fuzzy.inputs");
    }
    if (f.contains("output")) {
      cfg.fuzzy.output_terms =
          r.terms<2>(f.at("output"), {"ABSENT", "PRESENT"}, "fuzzy.output");
    }
    r.get_enum(f, "defuzzifier", cfg.fuzzy.defuzzifier, "fuzzy.",
               [](const std::string& v) { return parse_defuzzifier(v); });
    r.get(f, "resolution", cfg.fuzzy.resolution, "fuzzy.");
  }

  if (doc.contains("metadata")) {
    if (doc.at("metadata").is_object()) {
      cfg.metadata_json = doc.at("metadata").dump();
    } else {
      r.problems.push_back("metadata: expected an object");
    }
  }

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    r.problems.insert(r.problems.end(), e.violations().begin(), e.violations().end());
  }
  if (!r.problems.empty()) throw ConfigError(std::move(r.problems));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace coopsense
