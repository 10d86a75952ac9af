#include "anai/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anai/errors.hpp"

namespace anai {

namespace {

constexpr double kMinCapacity = 1e-9;
constexpr double kMinX0 = 1e-12;
constexpr double kMaxDamping = 1e20;

using Vec3 = Eigen::Vector3d;

LogisticParams from_vector(const Vec3& v) { return {v[0], v[1], v[2]}; }

// Box projection: rate >= 0, 0 < capacity <= 1, 0 < x0 <= capacity.
Vec3 project(Vec3 v) {
  v[0] = std::max(v[0], 0.0);
  v[1] = std::clamp(v[1], kMinCapacity, 1.0);
  v[2] = std::clamp(v[2], kMinX0, v[1]);
  return v;
}

// Partials of K / (1 + q e^{-rt}), q = (K - x0) / x0, w.r.t. (rate, K, x0).
Vec3 gradient_of_model(const LogisticParams& p, double t) {
  const double e = std::exp(-p.rate * t);
  const double q = (p.capacity - p.x0) / p.x0;
  const double d = 1.0 + q * e;
  const double d2 = d * d;
  return {p.capacity * q * t * e / d2,
          1.0 / d - p.capacity * e / (p.x0 * d2),
          p.capacity * p.capacity * e / (p.x0 * p.x0 * d2)};
}

struct Linearization {
  Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
  Vec3 jtr = Vec3::Zero();
};

Linearization linearize(const LogisticParams& p, const ObservedSeries& series) {
  Linearization lin;
  for (const auto& s : series.samples()) {
    const Vec3 g = gradient_of_model(p, s.t);
    const double r = logistic_closed_form(p, s.t) - s.value;
    lin.jtj += g * g.transpose();
    lin.jtr += g * r;
  }
  return lin;
}

// Heuristic start: capacity just above the data maximum, x0 from the first
// sample (or the logit intercept when the series does not start at t = 0),
// rate from least squares on logit-transformed samples.
Vec3 initial_guess(const ObservedSeries& series) {
  const auto& samples = series.samples();
  double vmax = 0.0;
  for (const auto& s : samples) vmax = std::max(vmax, s.value);
  const double k0 = std::min(1.0, 1.05 * vmax);

  double st = 0, sy = 0, stt = 0, sty = 0;
  int n = 0;
  for (const auto& s : samples) {
    if (s.value <= 0.0 || s.value >= k0) continue;
    const double y = std::log(s.value / (k0 - s.value));
    st += s.t;
    sy += y;
    stt += s.t * s.t;
    sty += s.t * y;
    ++n;
  }
  const double denom = n * stt - st * st;
  if (n < 2 || denom <= 0.0) {
    throw DegenerateSeries("fewer than two samples strictly inside (0, capacity)");
  }
  const double slope = (n * sty - st * sy) / denom;
  const double intercept = (sy - slope * st) / n;
  if (!(slope > 0.0)) {
    throw DegenerateSeries("series has no increasing logistic trend");
  }

  const double lo = kMinX0;
  const double hi = k0 * (1.0 - 1e-6);
  double x0 = samples.front().t == 0.0 ? samples.front().value
                                       : k0 / (1.0 + std::exp(-intercept));
  x0 = std::clamp(x0, lo, hi);
  return {slope, k0, x0};
}

double relative_change(double before, double after) {
  const double scale = std::max(before, std::numeric_limits<double>::min());
  return (before - after) / scale;
}

}  // namespace

// ---------------------------------------------------------------------------

ObservedSeries::ObservedSeries(std::vector<Sample> samples, std::string label)
    : samples_(std::move(samples)), label_(std::move(label)) {
  if (samples_.size() < 4) {
    throw ValidationError("series", "needs at least 4 samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t)) throw ValidationError("series.t", "must be finite");
    if (!(s.value >= 0.0 && s.value <= 1.0)) {
      throw ValidationError("series.value", "row " + std::to_string(i + 1) + " outside [0, 1]");
    }
    if (i > 0 && !(s.t > samples_[i - 1].t)) {
      throw ValidationError("series.t", "must be strictly increasing (row " +
                                            std::to_string(i + 1) + ")");
    }
  }
}

double sum_squared_residuals(const LogisticParams& p, const ObservedSeries& series) noexcept {
  double sse = 0.0;
  for (const auto& s : series.samples()) {
    const double r = logistic_closed_form(p, s.t) - s.value;
    sse += r * r;
  }
  return sse;
}

FitResult fit_logistic(const ObservedSeries& series, const FitOptions& options) {
  const auto& samples = series.samples();
  double vmin = samples.front().value;
  double vmax = vmin;
  for (const auto& s : samples) {
    vmin = std::min(vmin, s.value);
    vmax = std::max(vmax, s.value);
  }
  const bool has_interior = std::any_of(samples.begin(), samples.end(), [vmax](const Sample& s) {
    return s.value > 0.0 && s.value < vmax;
  });
  if (vmax - vmin <= 1e-12 || !has_interior) {
    throw DegenerateSeries("series is flat; logistic parameters are unidentifiable");
  }

  Vec3 theta = project(initial_guess(series));
  double sse = sum_squared_residuals(from_vector(theta), series);
  double damping = options.initial_damping;

  FitResult result;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter + 1;
    const Linearization lin = linearize(from_vector(theta), series);
    if (lin.jtr.norm() < options.gradient_tolerance) {
      result.converged = true;
      break;
    }

    Eigen::Matrix3d a = lin.jtj;
    for (int i = 0; i < 3; ++i) a(i, i) += damping * std::max(lin.jtj(i, i), 1e-12);
    const Vec3 step = a.ldlt().solve(-lin.jtr);
    const Vec3 trial = project(theta + step);
    const double trial_sse = sum_squared_residuals(from_vector(trial), series);

    if (std::isfinite(trial_sse) && trial_sse < sse) {
      const double change = relative_change(sse, trial_sse);
      theta = trial;
      sse = trial_sse;
      damping = std::max(damping / 10.0, 1e-15);
      if (change < options.relative_sse_tolerance) {
        result.converged = true;
        break;
      }
    } else {
      damping *= 10.0;
      if (damping > kMaxDamping) {
        // No descent direction survives projection: a (constrained) minimum
        // to working precision.
        result.converged = true;
        break;
      }
    }
  }

  result.params = from_vector(theta);
  result.sse = sum_squared_residuals(result.params, series);
  return result;
}

std::optional<double> predict_crossing(const FitResult& fit_a, const FitResult& fit_i,
                                       UnitScore tau, double t_start) {
  if (!fit_a.converged || !fit_i.converged) {
    throw UnconvergedFit("crossing prediction needs converged fits");
  }
  const LogisticParams& a = fit_a.params;
  const LogisticParams& i = fit_i.params;
  auto limit = [](const LogisticParams& p) {
    if (p.x0 <= 0.0) return 0.0;
    return p.rate > 0.0 ? p.capacity : p.x0;
  };
  const double target = tau.value();
  auto product = [&](double t) { return logistic_closed_form(a, t) * logistic_closed_form(i, t); };

  if (product(t_start) > target) return t_start;
  if (limit(a) * limit(i) <= target) return std::nullopt;

  // Both factors are nondecreasing, so the first doubling bracket holds the
  // unique crossing.
  double lo = t_start;
  double step = 1.0;
  double hi = t_start + step;
  while (!(product(hi) > target)) {
    lo = hi;
    step *= 2.0;
    hi = t_start + step;
    if (!std::isfinite(hi) || step > 1e300) return std::nullopt;
  }
  while (hi - lo > kCrossingTimeTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (product(mid) > target ? hi : lo) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------

std::string_view to_string(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::AutonomyRate: return "autonomy.rate";
    case SweepParameter::AutonomyCapacity: return "autonomy.capacity";
    case SweepParameter::InfraRate: return "infra.rate";
    case SweepParameter::InfraCapacity: return "infra.capacity";
    case SweepParameter::Tau: return "tau";
    case SweepParameter::FeedbackBetaF: return "feedback.beta_f";
    case SweepParameter::FeedbackGammaC: return "feedback.gamma_c";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view path) {
  for (auto p : {SweepParameter::AutonomyRate, SweepParameter::AutonomyCapacity,
                 SweepParameter::InfraRate, SweepParameter::InfraCapacity, SweepParameter::Tau,
                 SweepParameter::FeedbackBetaF, SweepParameter::FeedbackGammaC}) {
    if (to_string(p) == path) return p;
  }
  throw ValidationError("parameter", "unknown sweep parameter '" + std::string(path) + "'");
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter param, double value) {
  ScenarioConfig s = base;
  auto feedback = [&]() -> FeedbackParams& {
    if (!s.feedback) {
      throw ValidationError(std::string(to_string(param)), "scenario has no feedback block");
    }
    return *s.feedback;
  };
  switch (param) {
    case SweepParameter::AutonomyRate: s.autonomy.rate = value; break;
    case SweepParameter::AutonomyCapacity: s.autonomy.capacity = value; break;
    case SweepParameter::InfraRate: s.infra.rate = value; break;
    case SweepParameter::InfraCapacity: s.infra.capacity = value; break;
    case SweepParameter::Tau: s.tau = checked_score(value, "tau"); break;
    case SweepParameter::FeedbackBetaF: feedback().beta_f = value; break;
    case SweepParameter::FeedbackGammaC: feedback().gamma_c = value; break;
  }
  s.validate();
  return s;
}

SweepSpec::SweepSpec(ScenarioConfig base, SweepParameter parameter, std::vector<double> values)
    : base_(std::move(base)), parameter_(parameter), values_(std::move(values)) {
  base_.validate();
  if (values_.empty()) throw ValidationError("values", "must be nonempty");
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (!(values_[k] > values_[k - 1])) {
      throw ValidationError("values", "must be strictly ascending");
    }
  }
  for (double v : values_) apply_sweep_value(base_, parameter_, v);
}

std::optional<double> SweepEntry::t_cross() const {
  if (const auto* t = std::get_if<std::optional<double>>(&outcome)) return *t;
  return std::nullopt;
}

std::vector<SweepEntry> sensitivity_sweep(const SweepSpec& spec) {
  std::vector<SweepEntry> out;
  out.reserve(spec.values().size());
  for (double v : spec.values()) {
    SweepEntry entry{v, std::optional<double>{}};
    try {
      const Trajectory traj = simulate(apply_sweep_value(spec.base(), spec.parameter(), v));
      entry.outcome = traj.crossing ? std::optional<double>{traj.crossing->t_cross} : std::nullopt;
    } catch (const Error& e) {
      entry.outcome = SweepFailure{e.kind(), e.what()};
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace anai
