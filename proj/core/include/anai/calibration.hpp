#pragma once

// Logistic curve fitting, crossing prediction from fitted curves, and
// one-parameter sensitivity sweeps over scenarios.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "anai/dynamics.hpp"

namespace anai {

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

class ObservedSeries {
 public:
  // Throws ValidationError unless there are >= 4 samples, t is strictly
  // increasing and every value is in [0, 1].
  explicit ObservedSeries(std::vector<Sample> samples, std::string label = {});

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<Sample> samples_;
  std::string label_;
};

struct FitResult {
  LogisticParams params;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct FitOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-10;
  double relative_sse_tolerance = 1e-12;
  double initial_damping = 1e-3;
};

// Sum of squared residuals of the closed-form logistic against the series.
double sum_squared_residuals(const LogisticParams& p, const ObservedSeries& series) noexcept;

// Damped Gauss-Newton (Levenberg-Marquardt) least squares on
// (rate, capacity, x0) with box projection 0 < capacity <= 1,
// 0 < x0 <= capacity, rate >= 0. Throws DegenerateSeries when the data carry
// no logistic trend. Hitting the iteration cap is reported through
// converged == false; the partial result is still returned.
FitResult fit_logistic(const ObservedSeries& series, const FitOptions& options = {});

// First t >= t_start with logistic_a(t) * logistic_i(t) > tau, to 1e-9, or
// nullopt when the asymptotic product cannot exceed tau. Throws
// UnconvergedFit if either fit did not converge.
std::optional<double> predict_crossing(const FitResult& fit_a, const FitResult& fit_i,
                                       UnitScore tau, double t_start = 0.0);

enum class SweepParameter {
  AutonomyRate,
  AutonomyCapacity,
  InfraRate,
  InfraCapacity,
  Tau,
  FeedbackBetaF,
  FeedbackGammaC,
};

std::string_view to_string(SweepParameter p) noexcept;
// Accepts the dotted path form, e.g. "autonomy.rate" or "feedback.beta_f".
SweepParameter parse_sweep_parameter(std::string_view path);

// Returns a copy of `base` with `param` set to `value`, validated.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter param, double value);

class SweepSpec {
 public:
  // Throws ValidationError if values are empty, not ascending, or any value
  // produces an invalid scenario.
  SweepSpec(ScenarioConfig base, SweepParameter parameter, std::vector<double> values);

  const ScenarioConfig& base() const noexcept { return base_; }
  SweepParameter parameter() const noexcept { return parameter_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  ScenarioConfig base_;
  SweepParameter parameter_;
  std::vector<double> values_;
};

struct SweepFailure {
  std::string kind;     // exception class name, e.g. "ClampViolation"
  std::string message;
};

struct SweepEntry {
  double value = 0.0;
  // Crossing time (nullopt: never crosses) or the failure for this entry.
  std::variant<std::optional<double>, SweepFailure> outcome;

  bool failed() const noexcept { return std::holds_alternative<SweepFailure>(outcome); }
  std::optional<double> t_cross() const;
};

// One simulation per swept value, in input order. Per-entry failures are
// recorded rather than propagated.
std::vector<SweepEntry> sensitivity_sweep(const SweepSpec& spec);

}  // namespace anai
