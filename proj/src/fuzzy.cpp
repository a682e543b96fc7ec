// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#include "coopsense/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace coopsense {

void TriangularMf::validate() const {
  if (!std::isfinite(left_foot) || !std::isfinite(peak) ||
      !std::isfinite(right_foot)) {
    throw std::invalid_argument("triangular MF parameters must be finite");
  }
  if (!(left_foot <= peak && peak <= right_foot)) {
    throw std::invalid_argument("triangular MF requires a <= c <= b");
  }
}

std::string_view to_string(InputLabel label) {
  switch (label) {
    case InputLabel::Low: return "LOW";
    case InputLabel::Medium: return "MEDIUM";
    case InputLabel::High: return "HIGH";
  }
  return "?";
}

std::string_view to_string(OutputLabel label) {
  return label == OutputLabel::Present ? "PRESENT" : "ABSENT";
}

template <typename Label, std::size_t Terms>
void LinguisticVariable<Label, Terms>::validate() const {
  if (!(universe.lo < universe.hi)) {
    throw std::invalid_argument(name + ": universe must satisfy lo < hi");
  }
  for (const auto& mf : terms) {
    mf.validate();
    if (mf.left_foot < universe.lo || mf.right_foot > universe.hi) {
      throw std::invalid_argument(name + ": term support leaves the universe");
    }
  }
}

template <typename Label, std::size_t Terms>
void LinguisticVariable<Label, Terms>::check_coverage() const {
  std::vector<double> cuts{universe.lo, universe.hi};
  for (const auto& mf : terms) {
    cuts.insert(cuts.end(), {mf.left_foot, mf.peak, mf.right_foot});
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Positivity only changes at MF breakpoints, so the breakpoints and one
  // interior point per gap between them decide coverage.
  auto covered = [&](double x) {
    return std::any_of(terms.begin(), terms.end(),
                       [x](const TriangularMf& mf) { return membership(mf, x) > 0.0; });
  };
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!covered(cuts[i]) ||
        (i + 1 < cuts.size() && !covered(0.5 * (cuts[i] + cuts[i + 1])))) {
      throw std::invalid_argument(name + ": terms leave part of the universe uncovered");
    }
  }
}

template struct LinguisticVariable<InputLabel, 3>;
template struct LinguisticVariable<OutputLabel, 2>;

InputVariable default_input_variable(std::string name, Universe universe) {
  const double lo = universe.lo, hi = universe.hi, mid = universe.mid();
  InputVariable var;
  var.name = std::move(name);
  var.universe = universe;
  var.terms = {TriangularMf{lo, lo, mid}, TriangularMf{lo, mid, hi},
               TriangularMf{mid, hi, hi}};
  return var;
}

OutputVariable default_output_variable() {
  OutputVariable var;
  var.name = "decision";
  var.universe = {0.0, 1.0};
  var.terms = {TriangularMf{0.0, 0.25, 0.5}, TriangularMf{0.5, 0.75, 1.0}};
  return var;
}

RuleBase build_rule_base() {
  using enum InputLabel;
  constexpr OutputLabel A = OutputLabel::Absent;
  constexpr OutputLabel P = OutputLabel::Present;
  // Consequent column, rows 1..27.
  constexpr std::array<OutputLabel, kRuleCount> consequents = {
      A, A, A, A, P, P, A, P, P,   // antecedent 1 LOW
      A, P, P, P, P, P, P, P, P,   // antecedent 1 MEDIUM
      A, P, P, P, P, P, P, P, P};  // antecedent 1 HIGH
  constexpr std::array<InputLabel, 3> levels = {Low, Medium, High};

  RuleBase rules{};
  std::size_t row = 0;
  for (InputLabel first : levels) {
    for (InputLabel second : levels) {
      for (InputLabel third : levels) {
        rules[row] = {{first, second, third}, consequents[row]};
        ++row;
      }
    }
  }
  return rules;
}

Defuzzifier parse_defuzzifier(std::string_view name) {
  if (name == "centroid") return Defuzzifier::Centroid;
  if (name == "bisector") return Defuzzifier::Bisector;
  if (name == "som") return Defuzzifier::SmallestOfMaximum;
  if (name == "mom") return Defuzzifier::MiddleOfMaximum;
  if (name == "lom") return Defuzzifier::LargestOfMaximum;
  throw std::invalid_argument("unknown defuzzifier '" + std::string(name) + "'");
}

std::string_view to_string(Defuzzifier method) {
  switch (method) {
    case Defuzzifier::Centroid: return "centroid";
    case Defuzzifier::Bisector: return "bisector";
    case Defuzzifier::SmallestOfMaximum: return "som";
    case Defuzzifier::MiddleOfMaximum: return "mom";
    case Defuzzifier::LargestOfMaximum: return "lom";
  }
  return "?";
}

Universe default_universe(FuzzyMode mode) {
  return mode == FuzzyMode::Information ? Universe{0.0, 150.0}
                                        : Universe{-3.0, 3.0};
}

FuzzySystem::Options FuzzySystem::default_options(FuzzyMode mode) {
  Options options;
  options.mode = mode;
  const Universe universe = default_universe(mode);
  for (std::size_t i = 0; i < kFuzzyInputs; ++i) {
    options.inputs[i] = default_input_variable("CR" + std::to_string(i + 1), universe);
  }
  options.output = default_output_variable();
  options.rules = build_rule_base();
  return options;
}

FuzzySystem::FuzzySystem(Options options) : options_(std::move(options)) {
  for (const auto& input : options_.inputs) {
    input.validate();
    input.check_coverage();
  }
  options_.output.validate();
  if (options_.resolution < 3) {
    throw std::invalid_argument("fuzzy output resolution must be >= 3");
  }

  std::array<int, kRuleCount> seen{};
  for (const auto& rule : options_.rules) {
    std::size_t index = 0;
    for (InputLabel label : rule.antecedents) {
      index = index * 3 + static_cast<std::size_t>(label);
    }
    if (index >= kRuleCount || ++seen[index] != 1) {
      throw std::invalid_argument("rule base must list each label triple exactly once");
    }
  }

  grid_ = universe_grid(options_.output.universe, options_.resolution);
  consequents_.resize(grid_.size(), 2);
  for (Eigen::Index j = 0; j < 2; ++j) {
    consequents_.col(j) = grid_.unaryExpr([&](double x) {
      return membership(options_.output.terms[j], x);
    });
  }
}

FuzzySystem::FuzzySystem(FuzzyMode mode, Defuzzifier method)
    : FuzzySystem([&] {
        Options options = default_options(mode);
        options.defuzzifier = method;
        return options;
      }()) {}

FuzzySystem FuzzySystem::with_defuzzifier(Defuzzifier method) const {
  FuzzySystem copy = *this;
  copy.options_.defuzzifier = method;
  return copy;
}

Eigen::ArrayXd universe_grid(Universe universe, Eigen::Index n) {
  Eigen::ArrayXd grid(n);
  const double span = universe.hi - universe.lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    grid[i] = universe.lo + span * (static_cast<double>(i) / static_cast<double>(n - 1));
  }
  grid[n - 1] = universe.hi;
  return grid;
}

std::array<double, kRuleCount> rule_strengths(const FuzzySystem& system,
                                              const FuzzyInputs& inputs) {
  const auto& options = system.options_;
  std::array<std::array<double, 3>, kFuzzyInputs> degrees{};
  for (std::size_t i = 0; i < kFuzzyInputs; ++i) {
    if (!std::isfinite(inputs[i])) {
      throw std::domain_error("fuzzy inputs must be finite");
    }
    degrees[i] = options.inputs[i].fuzzify(inputs[i]);
  }
  std::array<double, kRuleCount> strengths{};
  for (std::size_t r = 0; r < kRuleCount; ++r) {
    double s = 1.0;
    for (std::size_t i = 0; i < kFuzzyInputs; ++i) {
      s = std::min(s, degrees[i][static_cast<std::size_t>(options.rules[r].antecedents[i])]);
    }
    strengths[r] = s;
  }
  return strengths;
}

AggregateSet infer(const FuzzySystem& system, const FuzzyInputs& inputs) {
  const auto strengths = rule_strengths(system, inputs);
  std::array<double, 2> clip{};
  for (std::size_t r = 0; r < kRuleCount; ++r) {
    auto& level = clip[static_cast<std::size_t>(system.options_.rules[r].consequent)];
    level = std::max(level, strengths[r]);
  }
  AggregateSet out;
  out.x = system.grid_;
  out.mu = system.consequents_.col(0).min(clip[0]).max(
      system.consequents_.col(1).min(clip[1]));
  return out;
}

namespace {

// Cumulative trapezoid area; element i holds the area over [x_0, x_i].
Eigen::ArrayXd cumulative_area(const AggregateSet& agg) {
  const Eigen::Index n = agg.x.size();
  Eigen::ArrayXd cum(n);
  cum[0] = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    cum[i] = cum[i - 1] + 0.5 * (agg.mu[i - 1] + agg.mu[i]) * (agg.x[i] - agg.x[i - 1]);
  }
  return cum;
}

}  // namespace

double defuzzify(const AggregateSet& agg, Defuzzifier method) {
  const Eigen::Index n = agg.x.size();
  if (n < 2 || agg.mu.size() != n) {
    throw std::invalid_argument("defuzzify: malformed aggregate");
  }
  const double peak = agg.mu.maxCoeff();
  if (!(peak > 0.0)) throw NoRuleFired();

  switch (method) {
    case Defuzzifier::Centroid: {
      // Trapezoid rule for both integrals, in one pass.
      double moment = 0.0, area = 0.0;
      for (Eigen::Index i = 1; i < n; ++i) {
        const double dx = agg.x[i] - agg.x[i - 1];
        moment += 0.5 * (agg.x[i - 1] * agg.mu[i - 1] + agg.x[i] * agg.mu[i]) * dx;
        area += 0.5 * (agg.mu[i - 1] + agg.mu[i]) * dx;
      }
      if (!(area > 0.0)) throw NoRuleFired();
      return moment / area;
    }
    case Defuzzifier::Bisector: {
      const Eigen::ArrayXd cum = cumulative_area(agg);
      if (!(cum[n - 1] > 0.0)) throw NoRuleFired();
      const double half = 0.5 * cum[n - 1];
      const auto* first = std::lower_bound(cum.data(), cum.data() + n, half);
      const Eigen::Index i = first - cum.data();
      if (i == 0) return agg.x[0];
      const double t = (half - cum[i - 1]) / (cum[i] - cum[i - 1]);
      return agg.x[i - 1] + t * (agg.x[i] - agg.x[i - 1]);
    }
    case Defuzzifier::SmallestOfMaximum:
    case Defuzzifier::MiddleOfMaximum:
    case Defuzzifier::LargestOfMaximum: {
      const double cutoff = peak * (1.0 - 1e-9);
      Eigen::Index first = 0;
      while (agg.mu[first] < cutoff) ++first;
      Eigen::Index last = n - 1;
      while (agg.mu[last] < cutoff) --last;
      if (method == Defuzzifier::SmallestOfMaximum) return agg.x[first];
      if (method == Defuzzifier::LargestOfMaximum) return agg.x[last];
      return 0.5 * (agg.x[first] + agg.x[last]);
    }
  }
  throw std::invalid_argument("defuzzify: unknown method");
}

double evaluate(const FuzzySystem& system, const FuzzyInputs& inputs) {
  return defuzzify(infer(system, inputs), system.defuzzifier());
}

}  // namespace coopsense
