// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "anai/anai.hpp"
#include "fixtures.hpp"

namespace {

using namespace anai;
using testing::logistic_inverse;
using testing::logistic_oracle;
using testing::SplitMix64;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Runs `check` on `cases` generated inputs; stops at the first failure.
bool property(Outcome& o, const std::string& name, int cases,
              const std::function<bool(SplitMix64&, int)>& check) {
  SplitMix64 rng(std::hash<std::string>{}(name));
  for (int i = 0; i < cases; ++i) {
    bool ok = false;
    try {
      ok = check(rng, i);
    } catch (const std::exception& e) {
      o.require(false, name + " case " + std::to_string(i) + " threw " + e.what());
      return false;
    }
    if (!ok) {
      o.require(false, name + " failed at case " + std::to_string(i));
      return false;
    }
  }
  return true;
}

UnitScore u(SplitMix64& rng) { return UnitScore{rng.uniform()}; }

// ---------------------------------------------------------------------------

Outcome table_reproduction() {
  Outcome o;
  const double expected[] = {0.4875, 0.40, 0.27, 0.64};
  const ClassifierConfig cfg;
  int i = 0;
  for (const auto& row : testing::table1()) {
    const UnitScore ttp = transition_potential(UnitScore{row.aix}, UnitScore{row.icc});
    o.require(std::abs(ttp - expected[i]) < 1e-12, std::string(row.name) + " ttp " + fmt("%.6f", ttp));
    o.require(round_half_up(ttp, 2) == row.ttp, std::string(row.name) + " rounded ttp");
    o.require(classify_stage(ttp, cfg) == row.stage, std::string(row.name) + " stage");
    ++i;
  }
  o.detail = o.pass ? "4/4 rows: TTP, rounding and stage match" : o.detail;
  return o;
}

Outcome ode_oracle() {
  Outcome o;
  double worst = 0.0;
  for (const LogisticParams p : {LogisticParams{0.5, 0.9, 0.1}, LogisticParams{0.3, 0.8, 0.05}}) {
    const RightHandSide rhs = [&](double, std::span<const double> x, std::span<double> dx) {
      dx[0] = p.rate * x[0] * (1.0 - x[0] / p.capacity);
    };
    const double init[] = {p.x0};
    const double cap[] = {p.capacity};
    const StateHistory h = integrate(rhs, TimeGrid{0.0, 50.0, 0.01}, init, cap);
    o.require(h.size() == 5001, "expected 5001 samples");
    for (std::size_t k = 0; k < h.size(); ++k) {
      worst = std::max(worst, std::abs(h.state(k)[0] -
                                        logistic_oracle(p.rate, p.capacity, p.x0, h.time(k))));
    }
  }
  o.require(worst < 1e-6, "max error " + fmt("%.3e", worst));
  if (o.pass) o.detail = "max |RK4 - closed form| = " + fmt("%.3e", worst) + " (< 1e-6)";
  return o;
}

Outcome crossing_time_check() {
  Outcome o;
  const LogisticParams p{0.5, 0.9, 0.1};
  const Trajectory traj = simulate(testing::decoupled_scenario(p, p, 0.5));
  const double oracle = logistic_inverse(0.5, 0.9, 0.1, std::sqrt(0.5));
  o.require(traj.crossing.has_value(), "no crossing");
  if (!o.pass) return o;
  const double err = std::abs(traj.crossing->t_cross - oracle);
  o.require(err < 1e-4, "t_cross " + fmt("%.6f", traj.crossing->t_cross) + " oracle " +
                            fmt("%.6f", oracle));
  if (o.pass) {
    o.detail = "t_cross = " + fmt("%.6f", traj.crossing->t_cross) + ", oracle " +
               fmt("%.6f", oracle) + ", |diff| = " + fmt("%.2e", err);
  }
  return o;
}

Outcome product_rule() {
  Outcome o;
  std::vector<std::pair<LogisticParams, LogisticParams>> cases{
      {{0.5, 0.9, 0.1}, {0.3, 0.8, 0.05}}, {{0.5, 0.9, 0.1}, {0.5, 0.9, 0.1}}};
  SplitMix64 rng(4);
  for (int i = 0; i < 8; ++i) cases.push_back({testing::random_logistic(rng), testing::random_logistic(rng)});
  double worst_fraction = 1.0;
  for (const auto& [a, c] : cases) {
    const Trajectory traj = simulate(testing::decoupled_scenario(a, c, 0.5, 50.0, 0.01));
    const auto rates = growth_decomposition(traj);
    std::size_t eligible = 0, ok = 0;
    for (std::size_t k = 0; k < rates.size(); ++k) {
      const auto& pt = traj.points[k + 1];
      if (pt.aix <= 1e-6 || pt.icc <= 1e-6) continue;
      ++eligible;
      if (std::abs(rates[k].ttp - (rates[k].aix + rates[k].icc)) < 1e-4) ++ok;
    }
    const double fraction = eligible ? double(ok) / double(eligible) : 0.0;
    worst_fraction = std::min(worst_fraction, fraction);
  }
  o.require(worst_fraction >= 0.95, "worst fraction " + fmt("%.4f", worst_fraction));
  if (o.pass) o.detail = std::to_string(cases.size()) + " trajectories, worst fraction within 1e-4 = " +
                         fmt("%.4f", worst_fraction);
  return o;
}

Outcome feedback_acceleration() {
  Outcome o;
  const double gains[] = {0.05, 0.1, 0.2};
  const CouplingFunction fns[] = {CouplingFunction::Linear, CouplingFunction::Log,
                                  CouplingFunction::Saturating};
  const std::pair<LogisticParams, LogisticParams> bases[] = {
      {{0.5, 0.9, 0.1}, {0.3, 0.8, 0.05}}, {{0.5, 0.9, 0.1}, {0.5, 0.9, 0.1}},
      {{0.4, 1.0, 0.05}, {0.2, 0.9, 0.1}}, {{0.8, 0.85, 0.02}, {0.35, 0.95, 0.05}},
      {{0.3, 0.95, 0.1}, {0.6, 0.75, 0.1}},
  };
  int earlier = 0, crossed = 0;
  for (int i = 0; i < 10; ++i) {
    const auto& [a, c] = bases[i % 5];
    ScenarioConfig base = testing::decoupled_scenario(a, c, 0.5, 80.0, 0.01);
    FeedbackParams f;
    f.kappa_e = 1.5;
    f.beta_f = gains[i % 3];
    f.gamma_c = 0.05 + 0.01 * i;
    f.c0 = 1.0;
    f.coupling_fn = fns[i % 3];
    f.mode = FeedbackMode::Additive;
    ScenarioConfig fed = base;
    fed.feedback = f;
    const auto tb = simulate(base).crossing;
    const auto tf = simulate(fed).crossing;
    if (!tf) continue;
    ++crossed;
    const double tb_v = tb ? tb->t_cross : INFINITY;
    o.require(tf->t_cross <= tb_v, "scenario " + std::to_string(i) + " crossed later");
    if (tf->t_cross < tb_v) ++earlier;
  }
  o.require(earlier >= 8, std::to_string(earlier) + "/10 strictly earlier");
  if (o.pass) o.detail = std::to_string(crossed) + "/10 crossed, none later, " +
                         std::to_string(earlier) + "/10 strictly earlier";
  return o;
}

ObservedSeries series(const LogisticParams& p, SplitMix64* noise) {
  std::vector<Sample> s;
  for (int t = 0; t <= 20; ++t) {
    double v = logistic_oracle(p.rate, p.capacity, p.x0, t);
    if (noise) v = std::clamp(v + testing::kNoiseSigma * noise->normal(), 0.0, 1.0);
    s.push_back({double(t), v});
  }
  return ObservedSeries{std::move(s)};
}

Outcome calibration_round_trip() {
  Outcome o;
  const LogisticParams truth{0.5, 0.9, 0.1};
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  const FitResult clean = fit_logistic(series(truth, nullptr));
  const double e_clean = std::max({rel(clean.params.rate, truth.rate),
                                   rel(clean.params.capacity, truth.capacity),
                                   rel(clean.params.x0, truth.x0)});
  o.require(clean.converged && e_clean < 1e-4, "noiseless rel error " + fmt("%.3e", e_clean));
  SplitMix64 noise(testing::kNoiseSeed);
  const FitResult noisy = fit_logistic(series(truth, &noise));
  const double e_noisy = std::max(rel(noisy.params.rate, truth.rate),
                                  rel(noisy.params.capacity, truth.capacity));
  o.require(noisy.converged && e_noisy < 0.05, "noisy rel error " + fmt("%.3e", e_noisy));
  if (o.pass) o.detail = "noiseless max rel err " + fmt("%.2e", e_clean) + ", noisy (seed 20240601) " +
                         fmt("%.2e", e_noisy);
  return o;
}

Outcome phase_space_consistency() {
  Outcome o;
  double worst = 0.0;
  for (double tau : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    for (const auto& p : boundary_curve(tau, 513).points) worst = std::max(worst, std::abs(p.aix * p.icc - tau));
  }
  o.require(worst < 1e-12, "boundary error " + fmt("%.3e", worst));

  std::vector<std::size_t> counts;
  for (double tau : {0.3, 0.5, 0.7}) {
    const auto cfg = ClassifierConfig::for_tau(UnitScore{tau});
    const auto grid = regime_grid(cfg, 32);
    for (std::size_t i = 0; i < 32; ++i) {
      for (std::size_t j = 0; j < 32; ++j) {
        const auto label = grid.at(i, j);
        o.require(label == classify_regime(UnitScore{grid.center(i)}, UnitScore{grid.center(j)}, cfg),
                  "grid disagrees with classifier");
        if (label == RegimeLabel::AnaiRegime) {
          for (std::size_t a = i; a < 32; ++a) {
            for (std::size_t b = j; b < 32; ++b) {
              o.require(grid.at(a, b) == RegimeLabel::AnaiRegime, "Anai region not upward-closed");
            }
          }
        }
      }
    }
    counts.push_back(grid.count(RegimeLabel::AnaiRegime));
  }
  o.require(counts[0] >= counts[1] && counts[1] >= counts[2], "Anai count increased with tau");
  if (o.pass) {
    o.detail = "boundary err " + fmt("%.1e", worst) + "; Anai cells " + std::to_string(counts[0]) +
               " >= " + std::to_string(counts[1]) + " >= " + std::to_string(counts[2]);
  }
  return o;
}

ScenarioConfig random_scenario(SplitMix64& rng, bool feedback) {
  ScenarioConfig s = testing::decoupled_scenario(testing::random_logistic(rng),
                                                 testing::random_logistic(rng),
                                                 rng.uniform(0.05, 0.95), 20.0, 0.05);
  if (feedback) {
    FeedbackParams f;
    f.kappa_e = rng.uniform(0.1, 3.0);
    f.beta_f = rng.uniform(0.0, 0.3);
    f.gamma_c = rng.uniform(0.0, 0.2);
    f.c0 = rng.uniform(0.5, 2.0);
    f.coupling_fn = static_cast<CouplingFunction>(rng.next() % 3);
    f.mode = rng.uniform() < 0.5 ? FeedbackMode::Replace : FeedbackMode::Additive;
    s.feedback = f;
  }
  return s;
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream out;
  write_trajectory_csv(out, t);
  return out.str();
}

Outcome invariant_suite() {
  Outcome o;
  constexpr int N = 1000;

  property(o, "score boundedness", N, [](SplitMix64& r, int) {
    const double aix = autonomy_index({u(r), u(r), u(r), u(r)});
    const double icc = coupling_coefficient({u(r), u(r), u(r)});
    const double ttp = transition_potential(UnitScore{aix}, UnitScore{icc});
    return aix >= 0 && aix <= 1 && icc >= 0 && icc <= 1 && ttp >= 0 && ttp <= 1;
  });
  property(o, "score monotonicity", N, [](SplitMix64& r, int) {
    AutonomyComponents a{u(r), u(r), u(r), u(r)};
    InfraComponents c{u(r), u(r), u(r)};
    const UnitScore x = u(r), y = u(r);
    const double aix = autonomy_index(a), icc = coupling_coefficient(c);
    const double ttp = transition_potential(x, y);
    a.m = UnitScore{std::min(1.0, a.m + r.uniform(0, 0.5))};
    c.p_p = UnitScore{std::min(1.0, c.p_p + r.uniform(0, 0.5))};
    const UnitScore x2{std::min(1.0, x + r.uniform(0, 0.5))};
    return autonomy_index(a) >= aix && coupling_coefficient(c) >= icc &&
           transition_potential(x2, y) >= ttp;
  });
  property(o, "annihilation", N, [](SplitMix64& r, int i) {
    InfraComponents c{u(r), u(r), u(r)};
    (i % 3 == 0 ? c.e_p : i % 3 == 1 ? c.d_p : c.p_p) = UnitScore{0.0};
    return coupling_coefficient(c) == 0.0 && transition_potential(UnitScore{0.0}, u(r)) == 0.0 &&
           transition_potential(u(r), UnitScore{0.0}) == 0.0;
  });
  property(o, "trajectory boundedness", N, [](SplitMix64& r, int i) {
    const ScenarioConfig s = random_scenario(r, i % 2 == 1);
    for (const auto& p : simulate(s).points) {
      if (p.aix > s.autonomy.capacity + kClampTolerance || p.icc > s.infra.capacity + kClampTolerance ||
          p.ttp != p.aix * p.icc)
        return false;
    }
    return true;
  });
  property(o, "trajectory monotonicity", N, [](SplitMix64& r, int) {
    const auto traj = simulate(random_scenario(r, false));
    for (std::size_t k = 1; k < traj.points.size(); ++k) {
      const auto& a = traj.points[k - 1];
      const auto& b = traj.points[k];
      if (!(b.t > a.t && b.aix > a.aix && b.icc > a.icc && b.ttp >= a.ttp)) return false;
    }
    return true;
  });
  property(o, "fixed points", N, [](SplitMix64& r, int) {
    LogisticParams p = testing::random_logistic(r);
    const double t = r.uniform(0, 100);
    LogisticParams zero = p, full = p;
    zero.x0 = 0.0;
    full.x0 = p.capacity;
    if (logistic_closed_form(zero, t) != 0.0 || logistic_closed_form(full, t) != p.capacity) return false;
    const auto traj = simulate(testing::decoupled_scenario(zero, full, 0.5, 20.0, 0.05));
    for (const auto& pt : traj.points) {
      if (pt.aix != 0.0 || std::abs(pt.icc - p.capacity) > kClampTolerance) return false;
    }
    return !traj.crossing;
  });
  property(o, "determinism", N, [](SplitMix64& r, int i) {
    const ScenarioConfig s = random_scenario(r, i % 2 == 0);
    const auto a = simulate(s), b = simulate(s);
    if (a.points.size() != b.points.size() || a.crossing.has_value() != b.crossing.has_value()) return false;
    if (a.crossing && a.crossing->t_cross != b.crossing->t_cross) return false;
    for (std::size_t k = 0; k < a.points.size(); ++k) {
      const auto &p = a.points[k], &q = b.points[k];
      if (p.t != q.t || p.aix != q.aix || p.icc != q.icc || p.ttp != q.ttp || p.compute != q.compute ||
          p.energy != q.energy)
        return false;
    }
    return true;
  });
  property(o, "crossing event", N, [](SplitMix64& r, int i) {
    const ScenarioConfig s = random_scenario(r, i % 2 == 0);
    const auto traj = simulate(s);
    if (!traj.crossing) return traj.points.back().ttp <= s.tau;
    const double err = std::abs(traj.crossing->ttp_at_cross - s.tau);
    return err < 1e-6 || (traj.crossing->t_cross == s.grid.t_start && traj.points.front().ttp > s.tau);
  });
  property(o, "scenario round-trip", N, [](SplitMix64& r, int i) {
    ScenarioDocument doc;
    doc.config = random_scenario(r, i % 2 == 0);
    doc.config.grid = {r.uniform(-10, 10), 0.0, r.uniform(1e-4, 0.5)};
    doc.config.grid.t_end = doc.config.grid.t_start + r.uniform(1.0, 100.0);
    if (i % 5 == 0) doc.classifier = ClassifierSettings{0.4, std::array<double, 3>{0.3 * doc.config.tau, 0.6 * doc.config.tau, doc.config.tau}};
    if (i % 7 == 0) doc.time_unit_label = "years";
    const std::string text = serialize_scenario(doc);
    const auto back = parse_scenario_document(text);
    return back == doc && serialize_scenario(back) == text;
  });
  property(o, "csv round-trip", N, [](SplitMix64& r, int i) {
    ScenarioConfig s = random_scenario(r, i % 2 == 0);
    s.grid.t_end = 2.0;
    const std::string first = trajectory_csv(simulate(s));
    std::istringstream in(first);
    return trajectory_csv(read_trajectory_csv(in)) == first;
  });

  if (o.pass) o.detail = "10 properties x 1000 cases";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"AC1 table reproduction", table_reproduction},
      {"AC2 ODE oracle equivalence", ode_oracle},
      {"AC3 crossing time", crossing_time_check},
      {"AC4 product rule", product_rule},
      {"AC5 feedback acceleration", feedback_acceleration},
      {"AC6 calibration round-trip", calibration_round_trip},
      {"AC7 phase-space consistency", phase_space_consistency},
      {"AC8 invariant suite", invariant_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
