#pragma once

// Time-domain transition model: logistic growth of autonomy and coupling,
// the energy-computation feedback variant, RK4 integration, and threshold
// crossing detection.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anai/indices.hpp"

namespace anai {

// Overshoot past a state bound that RK4 may silently clamp.
inline constexpr double kClampTolerance = 1e-9;
// Width of the final bisection bracket when refining a crossing time.
inline constexpr double kCrossingTimeTolerance = 1e-9;

// dx/dt = rate * x * (1 - x / capacity)
struct LogisticParams {
  double rate = 0.0;
  double capacity = 1.0;
  double x0 = 0.0;

  // Throws ValidationError with `path` prefixed to the offending field.
  void validate(std::string_view path) const;

  friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

// Exact solution of the logistic ODE; x0 = 0 stays at 0.
double logistic_closed_form(const LogisticParams& p, double t) noexcept;

enum class CouplingFunction { Linear, Log, Saturating };

// How the feedback term enters the coupling equation.
//   Replace:  dICC/dt = beta_f f(C)/f(c0) (1 - ICC/K_I)
//   Additive: the logistic coupling term is kept and the feedback term added.
enum class FeedbackMode { Replace, Additive };

std::string_view to_string(CouplingFunction fn) noexcept;
std::string_view to_string(FeedbackMode mode) noexcept;

struct FeedbackParams {
  double kappa_e = 1.0;  // energy per unit compute
  double beta_f = 0.0;   // feedback gain
  double gamma_c = 0.0;  // compute growth rate per unit autonomy
  double c0 = 1.0;       // initial compute intensity
  CouplingFunction coupling_fn = CouplingFunction::Saturating;
  std::optional<double> c_half;  // Saturating only; defaults to c0
  FeedbackMode mode = FeedbackMode::Replace;

  void validate(std::string_view path) const;

  // f(C) for the selected family.
  double coupling(double compute) const noexcept;
  // f(C) / f(c0).
  double normalized_coupling(double compute) const noexcept;
  double half_saturation() const noexcept { return c_half.value_or(c0); }

  friend bool operator==(const FeedbackParams&, const FeedbackParams&) = default;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 0.01;

  void validate(std::string_view path) const;
  // round((t_end - t_start) / dt)
  std::size_t steps() const;
  double time_at(std::size_t k) const noexcept { return t_start + static_cast<double>(k) * dt; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct ScenarioConfig {
  LogisticParams autonomy;
  LogisticParams infra;
  UnitScore tau{kDefaultTau};
  std::optional<FeedbackParams> feedback;
  TimeGrid grid;

  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct CrossingEvent {
  double t_cross = 0.0;
  UnitScore ttp_at_cross;
};

struct TrajectoryPoint {
  double t = 0.0;
  UnitScore aix;
  UnitScore icc;
  UnitScore ttp;
  std::optional<double> compute;
  std::optional<double> energy;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::optional<CrossingEvent> crossing;
};

// ---------------------------------------------------------------------------
// Generic fixed-step integration

// Writes dx/dt into the last argument.
using RightHandSide =
    std::function<void(double t, std::span<const double> x, std::span<double> dxdt)>;

// Row-major (t, state) history produced by integrate().
class StateHistory {
 public:
  explicit StateHistory(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return times_.size(); }
  double time(std::size_t k) const noexcept { return times_[k]; }
  std::span<const double> state(std::size_t k) const noexcept {
    return {values_.data() + k * dim_, dim_};
  }

  void reserve(std::size_t n);
  void push_back(double t, std::span<const double> x);

 private:
  std::size_t dim_;
  std::vector<double> times_;
  std::vector<double> values_;
};

// One classical RK4 step of size h from (t, x); result written to `out`.
void rk4_step(const RightHandSide& rhs, double t, std::span<const double> x, double h,
              std::span<double> out);

// Fixed-step RK4 over the grid. Every component has lower bound 0 and the
// matching entry of `upper_bounds` (empty span: unbounded above). Overshoots
// within kClampTolerance are clamped; larger ones throw ClampViolation.
// NaN/inf throws NonFiniteState.
StateHistory integrate(const RightHandSide& rhs, const TimeGrid& grid,
                       std::span<const double> initial_state,
                       std::span<const double> upper_bounds = {});

// ---------------------------------------------------------------------------
// Transition simulations

Trajectory simulate_decoupled(const ScenarioConfig& s);
Trajectory simulate_feedback(const ScenarioConfig& s);
// Dispatches on whether s.feedback is present.
Trajectory simulate(const ScenarioConfig& s);

// First time TTP strictly exceeds tau, refined by bisection on a cubic
// Hermite interpolant of the stored samples. A trajectory that starts above
// tau crosses at its first sample.
std::optional<CrossingEvent> crossing_time(const Trajectory& traj, UnitScore tau);

struct GrowthRates {
  double t = 0.0;
  double aix = 0.0;
  double icc = 0.0;
  double ttp = 0.0;
};

// Central-difference relative growth rates (dx/dt)/x at interior samples.
// Throws DegenerateTrajectory for fewer than three points or a zero interior
// value.
std::vector<GrowthRates> growth_decomposition(const Trajectory& traj);

}  // namespace anai
