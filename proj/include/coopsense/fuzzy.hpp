// Copyright 2026 The coopsense Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace coopsense {

/// Triangle with feet a <= c <= b. a == c or c == b gives a shoulder.
struct TriangularMf {
  double left_foot = 0.0;
  double peak = 0.0;
  double right_foot = 0.0;

  void validate() const;
};

template <typename Scalar>
Scalar membership(const TriangularMf& mf, Scalar x) {
  const Scalar a = mf.left_foot, c = mf.peak, b = mf.right_foot;
  if (x < a || x > b) return Scalar(0);
  if (x == c) return Scalar(1);
  if (x < c) return (x - a) / (c - a);
  return (b - x) / (b - c);
}

struct Universe {
  double lo = 0.0;
  double hi = 1.0;

  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  double mid() const { return 0.5 * (lo + hi); }
};

enum class InputLabel : std::uint8_t { Low, Medium, High };
enum class OutputLabel : std::uint8_t { Absent, Present };

std::string_view to_string(InputLabel label);
std::string_view to_string(OutputLabel label);

/// A variable with a fixed, ordered term set indexed by Label.
template <typename Label, std::size_t Terms>
struct LinguisticVariable {
  std::string name;
  Universe universe;
  std::array<TriangularMf, Terms> terms{};

  const TriangularMf& term(Label label) const {
    return terms[static_cast<std::size_t>(label)];
  }

  /// Degrees for every term; x is clamped into the universe first.
  std::array<double, Terms> fuzzify(double x) const {
    const double clamped = universe.clamp(x);
    std::array<double, Terms> degrees{};
    for (std::size_t i = 0; i < Terms; ++i) {
      degrees[i] = membership(terms[i], clamped);
    }
    return degrees;
  }

  /// Well-formed terms whose supports lie inside the universe.
  void validate() const;

  /// Throws unless every point of the universe has a term with positive
  /// membership. Required of input variables only: the default ABSENT and
  /// PRESENT consequents both vanish at 0, 0.5 and 1.
  void check_coverage() const;
};

using InputVariable = LinguisticVariable<InputLabel, 3>;
using OutputVariable = LinguisticVariable<OutputLabel, 2>;
extern template struct LinguisticVariable<InputLabel, 3>;
extern template struct LinguisticVariable<OutputLabel, 2>;

/// LOW = (lo, lo, mid), MEDIUM = (lo, mid, hi), HIGH = (mid, hi, hi).
InputVariable default_input_variable(std::string name, Universe universe);

/// ABSENT = (0, 0.25, 0.5), PRESENT = (0.5, 0.75, 1) on [0, 1].
OutputVariable default_output_variable();

constexpr std::size_t kFuzzyInputs = 3;
constexpr std::size_t kRuleCount = 27;

struct FuzzyRule {
  std::array<InputLabel, kFuzzyInputs> antecedents{};
  OutputLabel consequent = OutputLabel::Absent;

  friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

using RuleBase = std::array<FuzzyRule, kRuleCount>;

/// The 27 rules, enumerated with the first antecedent varying slowest.
RuleBase build_rule_base();

enum class Defuzzifier {
  Centroid,
  Bisector,
  SmallestOfMaximum,
  MiddleOfMaximum,
  LargestOfMaximum,
};

/// Accepts centroid | bisector | som | mom | lom (case-sensitive).
Defuzzifier parse_defuzzifier(std::string_view name);
std::string_view to_string(Defuzzifier method);

/// Which fusion path a system is built for; fixes its default universe.
enum class FuzzyMode { Information, Decision };

Universe default_universe(FuzzyMode mode);

/// Sampled Mamdani aggregate over the output universe.
struct AggregateSet {
  Eigen::ArrayXd x;
  Eigen::ArrayXd mu;
};

/// Thrown by defuzzify when the aggregate has no mass.
class NoRuleFired : public std::runtime_error {
 public:
  NoRuleFired() : std::runtime_error("defuzzify: aggregate is empty, no rule fired") {}
};

using FuzzyInputs = std::array<double, kFuzzyInputs>;

/// Immutable three-input Mamdani system (min implication, max aggregation).
class FuzzySystem {
 public:
  struct Options {
    FuzzyMode mode = FuzzyMode::Decision;
    std::array<InputVariable, kFuzzyInputs> inputs;
    OutputVariable output;
    RuleBase rules;
    Defuzzifier defuzzifier = Defuzzifier::Centroid;
    Eigen::Index resolution = 1001;
  };

  /// Default membership functions and rule base for the given mode.
  static Options default_options(FuzzyMode mode);

  explicit FuzzySystem(Options options);
  explicit FuzzySystem(FuzzyMode mode = FuzzyMode::Decision,
                       Defuzzifier method = Defuzzifier::Centroid);

  FuzzyMode mode() const { return options_.mode; }
  Defuzzifier defuzzifier() const { return options_.defuzzifier; }
  const Options& options() const { return options_; }
  const Eigen::ArrayXd& grid() const { return grid_; }

  /// Copy with a different defuzzification method.
  FuzzySystem with_defuzzifier(Defuzzifier method) const;

 private:
  friend std::array<double, kRuleCount> rule_strengths(const FuzzySystem&,
                                                       const FuzzyInputs&);
  friend AggregateSet infer(const FuzzySystem&, const FuzzyInputs&);

  Options options_;
  Eigen::ArrayXd grid_;
  // Consequent membership sampled on grid_, one column per output term.
  Eigen::ArrayXXd consequents_;
};

/// Firing strength (min over antecedent degrees) of each rule, in rule order.
std::array<double, kRuleCount> rule_strengths(const FuzzySystem& system,
                                              const FuzzyInputs& inputs);

/// Max-min composition over the rule base.
AggregateSet infer(const FuzzySystem& system, const FuzzyInputs& inputs);

/// Equally spaced grid of n points on [lo, hi]; endpoints are exact.
Eigen::ArrayXd universe_grid(Universe universe, Eigen::Index n);

double defuzzify(const AggregateSet& aggregate, Defuzzifier method);

/// infer followed by defuzzify with the system's method.
double evaluate(const FuzzySystem& system, const FuzzyInputs& inputs);

}  // namespace coopsense
