#pragma once

// Test-only oracles and fixtures. Nothing here calls into the code paths it
// is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "anai/anai.hpp"

namespace anai::testing {

// ---------------------------------------------------------------------------
// Deterministic noise. SplitMix64 followed by Box-Muller; reproducible in any
// language:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^= z >> 31
//   uniform = (z >> 11) * 2^-53
//   normal  = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)   (one normal per pair)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kNoiseSeed = 20240601;
inline constexpr double kNoiseSigma = 0.01;

// ---------------------------------------------------------------------------
// Closed-form logistic, written out independently of the library.
inline double logistic_oracle(double rate, double k, double x0, double t) {
  if (x0 == 0.0) return 0.0;
  return k * x0 / (x0 + (k - x0) * std::exp(-rate * t));
}

// Time at which the logistic reaches level L (0 < L < K).
inline double logistic_inverse(double rate, double k, double x0, double level) {
  return std::log(((k - x0) / x0) * (level / (k - level))) / rate;
}

// Plain bisection of f(t) - target on [lo, hi] assuming a sign change.
inline double bisect_root(const std::function<double(double)>& f, double target, double lo,
                          double hi, double tol = 1e-13) {
  double flo = f(lo) - target;
  for (int i = 0; i < 400 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid) - target;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// First t on a uniform dense grid where f(t) > target.
inline double dense_scan(const std::function<double(double)>& f, double target, double lo,
                         double hi, double step) {
  const auto n = static_cast<long long>((hi - lo) / step);
  for (long long k = 0; k <= n; ++k) {
    const double t = lo + static_cast<double>(k) * step;
    if (f(t) > target) return t;
  }
  return NAN;
}

// ---------------------------------------------------------------------------
// Table 1 rows: AIx, ICC, published TTP, published stage.
struct TableRow {
  const char* name;
  double aix;
  double icc;
  double ttp;
  StageLabel stage;
};

inline const std::vector<TableRow>& table1() {
  static const std::vector<TableRow> rows{
      {"Smart Grid", 0.65, 0.75, 0.49, StageLabel::NearAnai},
      {"Finance", 0.80, 0.50, 0.40, StageLabel::Transitional},
      {"Research Labs", 0.60, 0.45, 0.27, StageLabel::Emerging},
      {"Manufacturing", 0.80, 0.80, 0.64, StageLabel::Anai},
  };
  return rows;
}

// Domain assessment whose AIx and ICC equal the requested values: all four
// autonomy components at aix, coupling split as (icc, 1, 1).
inline DomainAssessment assessment_for(const std::string& name, double aix, double icc) {
  const UnitScore a{aix};
  return DomainAssessment{name, {a, a, a, a}, {UnitScore{icc}, UnitScore{1.0}, UnitScore{1.0}}};
}

inline ScenarioConfig decoupled_scenario(LogisticParams autonomy, LogisticParams infra,
                                         double tau, double t_end = 50.0, double dt = 0.01) {
  ScenarioConfig s;
  s.autonomy = autonomy;
  s.infra = infra;
  s.tau = UnitScore{tau};
  s.grid = TimeGrid{0.0, t_end, dt};
  return s;
}

// Random valid logistic parameters with 0 < x0 < capacity.
inline LogisticParams random_logistic(SplitMix64& rng, double max_rate = 1.0) {
  LogisticParams p;
  p.rate = rng.uniform(0.05, max_rate);
  p.capacity = rng.uniform(0.2, 1.0);
  p.x0 = p.capacity * rng.uniform(0.01, 0.9);
  return p;
}

}  // namespace anai::testing
