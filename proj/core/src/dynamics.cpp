#include "anai/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "anai/errors.hpp"

namespace anai {

namespace {

constexpr std::size_t kMaxSteps = 50'000'000;

std::string join(std::string_view path, std::string_view field) {
  if (path.empty()) return std::string(field);
  std::string out(path);
  out += '.';
  out += field;
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void require_finite(double v, std::string_view path, std::string_view field) {
  if (!std::isfinite(v)) {
    throw ValidationError(join(path, field), "must be finite");
  }
}

double logistic_rate(const LogisticParams& p, double x) noexcept {
  return p.rate * x * (1.0 - x / p.capacity);
}

// Bisection on h in [lo, hi] for g(lo) <= tau < g(hi). Returns hi at exit.
template <typename F>
double bisect_crossing(F&& g, double lo, double hi, double tau) {
  while (hi - lo > kCrossingTimeTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > tau) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Index k of the first sample with ttp > tau, or npos.
std::size_t first_above(const std::vector<TrajectoryPoint>& pts, double tau) {
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].ttp.value() > tau) return k;
  }
  return static_cast<std::size_t>(-1);
}

UnitScore clamp_score(double v) { return UnitScore{std::clamp(v, 0.0, 1.0)}; }

// Shared by both simulations: builds the trajectory from an integrated
// history and refines the crossing by re-integrating a partial RK4 step from
// the last sample at or below tau.
Trajectory assemble(const ScenarioConfig& s, const RightHandSide& rhs,
                    const StateHistory& hist) {
  const bool with_compute = hist.dimension() == 3;
  const double kappa = s.feedback ? s.feedback->kappa_e : 0.0;

  Trajectory traj;
  traj.points.reserve(hist.size());
  for (std::size_t k = 0; k < hist.size(); ++k) {
    const auto x = hist.state(k);
    TrajectoryPoint p;
    p.t = hist.time(k);
    p.aix = UnitScore{x[0]};
    p.icc = UnitScore{x[1]};
    p.ttp = transition_potential(p.aix, p.icc);
    if (with_compute) {
      p.compute = x[2];
      p.energy = kappa * x[2];
    }
    traj.points.push_back(p);
  }

  const double tau = s.tau.value();
  const std::size_t k = first_above(traj.points, tau);
  if (k == static_cast<std::size_t>(-1)) return traj;
  if (k == 0) {
    traj.crossing = CrossingEvent{traj.points[0].t, traj.points[0].ttp};
    return traj;
  }

  const double t0 = hist.time(k - 1);
  const auto x0 = hist.state(k - 1);
  std::vector<double> buf(hist.dimension());
  auto ttp_after = [&](double h) {
    rk4_step(rhs, t0, x0, h, buf);
    return std::clamp(buf[0], 0.0, 1.0) * std::clamp(buf[1], 0.0, 1.0);
  };
  const double h = bisect_crossing(ttp_after, 0.0, hist.time(k) - t0, tau);
  traj.crossing = CrossingEvent{t0 + h, clamp_score(ttp_after(h))};
  return traj;
}

}  // namespace

// ---------------------------------------------------------------------------

void LogisticParams::validate(std::string_view path) const {
  require_finite(rate, path, "rate");
  require_finite(capacity, path, "capacity");
  require_finite(x0, path, "x0");
  if (rate < 0.0) throw ValidationError(join(path, "rate"), "must be >= 0");
  if (capacity <= 0.0) throw ValidationError(join(path, "capacity"), "must be > 0");
  if (capacity > 1.0) throw ValidationError(join(path, "capacity"), "must be <= 1");
  if (x0 < 0.0) throw ValidationError(join(path, "x0"), "must be >= 0");
  if (x0 > capacity) {
    throw ValidationError(std::string(path), "x0 (" + fmt(x0) + ") must not exceed capacity (" +
                                                 fmt(capacity) + ")");
  }
}

double logistic_closed_form(const LogisticParams& p, double t) noexcept {
  if (p.x0 <= 0.0) return 0.0;
  const double ratio = (p.capacity - p.x0) / p.x0;
  return p.capacity / (1.0 + ratio * std::exp(-p.rate * t));
}

std::string_view to_string(CouplingFunction fn) noexcept {
  switch (fn) {
    case CouplingFunction::Linear: return "linear";
    case CouplingFunction::Log: return "log";
    case CouplingFunction::Saturating: return "saturating";
  }
  return "?";
}

std::string_view to_string(FeedbackMode mode) noexcept {
  switch (mode) {
    case FeedbackMode::Replace: return "replace";
    case FeedbackMode::Additive: return "additive";
  }
  return "?";
}

void FeedbackParams::validate(std::string_view path) const {
  require_finite(kappa_e, path, "kappa_e");
  require_finite(beta_f, path, "beta_f");
  require_finite(gamma_c, path, "gamma_c");
  require_finite(c0, path, "c0");
  if (kappa_e <= 0.0) throw ValidationError(join(path, "kappa_e"), "must be > 0");
  if (beta_f < 0.0) throw ValidationError(join(path, "beta_f"), "must be >= 0");
  if (gamma_c < 0.0) throw ValidationError(join(path, "gamma_c"), "must be >= 0");
  if (c0 <= 0.0) throw ValidationError(join(path, "c0"), "must be > 0");
  if (c_half) {
    require_finite(*c_half, path, "c_half");
    if (*c_half <= 0.0) throw ValidationError(join(path, "c_half"), "must be > 0");
  }
}

double FeedbackParams::coupling(double compute) const noexcept {
  switch (coupling_fn) {
    case CouplingFunction::Linear: return compute;
    case CouplingFunction::Log: return std::log1p(compute);
    case CouplingFunction::Saturating: return compute / (half_saturation() + compute);
  }
  return 0.0;
}

double FeedbackParams::normalized_coupling(double compute) const noexcept {
  return coupling(compute) / coupling(c0);
}

void TimeGrid::validate(std::string_view path) const {
  require_finite(t_start, path, "t_start");
  require_finite(t_end, path, "t_end");
  require_finite(dt, path, "dt");
  if (dt <= 0.0) throw ValidationError(join(path, "dt"), "must be > 0");
  if (t_end <= t_start) throw ValidationError(join(path, "t_end"), "must exceed t_start");
  const double n = std::round((t_end - t_start) / dt);
  if (!(n >= 1.0)) throw ValidationError(std::string(path), "grid has no steps");
  if (n > static_cast<double>(kMaxSteps)) {
    throw ValidationError(std::string(path), "grid exceeds " + std::to_string(kMaxSteps) + " steps");
  }
}

std::size_t TimeGrid::steps() const {
  return static_cast<std::size_t>(std::llround((t_end - t_start) / dt));
}

void ScenarioConfig::validate() const {
  autonomy.validate("autonomy");
  infra.validate("infra");
  if (feedback) feedback->validate("feedback");
  grid.validate("grid");
}

// ---------------------------------------------------------------------------

void StateHistory::reserve(std::size_t n) {
  times_.reserve(n);
  values_.reserve(n * dim_);
}

void StateHistory::push_back(double t, std::span<const double> x) {
  times_.push_back(t);
  values_.insert(values_.end(), x.begin(), x.end());
}

void rk4_step(const RightHandSide& rhs, double t, std::span<const double> x, double h,
              std::span<double> out) {
  const std::size_t n = x.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  rhs(t, x, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  rhs(t + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  rhs(t + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  rhs(t + h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

StateHistory integrate(const RightHandSide& rhs, const TimeGrid& grid,
                       std::span<const double> initial_state,
                       std::span<const double> upper_bounds) {
  grid.validate("grid");
  const std::size_t dim = initial_state.size();
  if (!upper_bounds.empty() && upper_bounds.size() != dim) {
    throw ValidationError("upper_bounds", "size must match the state dimension");
  }
  for (double v : initial_state) {
    if (!std::isfinite(v)) throw NonFiniteState("initial state is not finite");
  }

  const std::size_t steps = grid.steps();
  StateHistory hist(dim);
  hist.reserve(steps + 1);
  hist.push_back(grid.t_start, initial_state);

  std::vector<double> x(initial_state.begin(), initial_state.end());
  std::vector<double> next(dim);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = grid.time_at(k);
    rk4_step(rhs, t, x, grid.dt, next);
    for (std::size_t i = 0; i < dim; ++i) {
      double& v = next[i];
      if (!std::isfinite(v)) {
        throw NonFiniteState("state component " + std::to_string(i) + " became non-finite at t=" +
                             fmt(grid.time_at(k + 1)));
      }
      const double upper =
          upper_bounds.empty() ? std::numeric_limits<double>::infinity() : upper_bounds[i];
      if (v < 0.0) {
        if (v < -kClampTolerance) {
          throw ClampViolation("state component " + std::to_string(i) + " fell to " + fmt(v) +
                               " at t=" + fmt(grid.time_at(k + 1)) + "; reduce dt");
        }
        v = 0.0;
      } else if (v > upper) {
        if (v > upper + kClampTolerance) {
          throw ClampViolation("state component " + std::to_string(i) + " overshot bound " +
                               fmt(upper) + " (value " + fmt(v) + ") at t=" +
                               fmt(grid.time_at(k + 1)) + "; reduce dt");
        }
        v = upper;
      }
    }
    x.swap(next);
    hist.push_back(grid.time_at(k + 1), x);
  }
  return hist;
}

// ---------------------------------------------------------------------------

Trajectory simulate_decoupled(const ScenarioConfig& s) {
  s.validate();
  if (s.feedback) {
    throw ValidationError("feedback", "must be absent for a decoupled simulation");
  }
  const LogisticParams a = s.autonomy;
  const LogisticParams i = s.infra;
  const RightHandSide rhs = [a, i](double, std::span<const double> x, std::span<double> dx) {
    dx[0] = logistic_rate(a, x[0]);
    dx[1] = logistic_rate(i, x[1]);
  };
  const std::array<double, 2> init{a.x0, i.x0};
  const std::array<double, 2> upper{a.capacity, i.capacity};
  return assemble(s, rhs, integrate(rhs, s.grid, init, upper));
}

Trajectory simulate_feedback(const ScenarioConfig& s) {
  s.validate();
  if (!s.feedback) {
    throw ValidationError("feedback", "required for a feedback simulation");
  }
  const LogisticParams a = s.autonomy;
  const LogisticParams i = s.infra;
  const FeedbackParams f = *s.feedback;
  const RightHandSide rhs = [a, i, f](double, std::span<const double> x, std::span<double> dx) {
    dx[0] = logistic_rate(a, x[0]);
    double d_icc = f.beta_f * f.normalized_coupling(x[2]) * (1.0 - x[1] / i.capacity);
    if (f.mode == FeedbackMode::Additive) d_icc += logistic_rate(i, x[1]);
    dx[1] = d_icc;
    dx[2] = f.gamma_c * x[0] * x[2];
  };
  const std::array<double, 3> init{a.x0, i.x0, f.c0};
  const std::array<double, 3> upper{a.capacity, i.capacity,
                                    std::numeric_limits<double>::infinity()};
  return assemble(s, rhs, integrate(rhs, s.grid, init, upper));
}

Trajectory simulate(const ScenarioConfig& s) {
  return s.feedback ? simulate_feedback(s) : simulate_decoupled(s);
}

// ---------------------------------------------------------------------------

std::optional<CrossingEvent> crossing_time(const Trajectory& traj, UnitScore tau) {
  const auto& pts = traj.points;
  if (pts.empty()) return std::nullopt;
  const std::size_t k = first_above(pts, tau.value());
  if (k == static_cast<std::size_t>(-1)) return std::nullopt;
  if (k == 0) return CrossingEvent{pts[0].t, pts[0].ttp};

  // Finite-difference slopes for the Hermite interpolant.
  auto slope = [&](std::size_t j) {
    const std::size_t lo = (j == 0) ? 0 : j - 1;
    const std::size_t hi = (j + 1 < pts.size()) ? j + 1 : j;
    return (pts[hi].ttp.value() - pts[lo].ttp.value()) / (pts[hi].t - pts[lo].t);
  };
  const double ta = pts[k - 1].t;
  const double tb = pts[k].t;
  const double h = tb - ta;
  const double ya = pts[k - 1].ttp.value();
  const double yb = pts[k].ttp.value();
  const double ma = slope(k - 1) * h;
  const double mb = slope(k) * h;
  auto interp = [&](double dt) {
    const double s = dt / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * ya + (s3 - 2 * s2 + s) * ma + (-2 * s3 + 3 * s2) * yb +
           (s3 - s2) * mb;
  };
  const double dt = bisect_crossing(interp, 0.0, h, tau.value());
  return CrossingEvent{ta + dt, clamp_score(interp(dt))};
}

std::vector<GrowthRates> growth_decomposition(const Trajectory& traj) {
  const auto& pts = traj.points;
  if (pts.size() < 3) {
    throw DegenerateTrajectory("growth decomposition needs at least 3 points");
  }
  std::vector<GrowthRates> out;
  out.reserve(pts.size() - 2);
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const auto& prev = pts[k - 1];
    const auto& cur = pts[k];
    const auto& next = pts[k + 1];
    if (cur.aix.value() == 0.0 || cur.icc.value() == 0.0 || cur.ttp.value() == 0.0) {
      throw DegenerateTrajectory("zero interior value at t=" + fmt(cur.t));
    }
    const double span = next.t - prev.t;
    auto rel = [span](double before, double here, double after) {
      return (after - before) / (span * here);
    };
    out.push_back({cur.t, rel(prev.aix, cur.aix, next.aix), rel(prev.icc, cur.icc, next.icc),
                   rel(prev.ttp, cur.ttp, next.ttp)});
  }
  return out;
}

}  // namespace anai
