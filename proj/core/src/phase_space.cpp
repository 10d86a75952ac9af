#include "anai/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include "anai/errors.hpp"

namespace anai {

RegimeGrid::RegimeGrid(std::size_t resolution, std::vector<RegimeLabel> labels)
    : n_(resolution), labels_(std::move(labels)) {
  if (labels_.size() != n_ * n_) {
    throw ValidationError("labels", "size must equal resolution squared");
  }
}

std::size_t RegimeGrid::count(RegimeLabel label) const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

BoundaryCurve boundary_curve(double tau, std::size_t n) {
  if (!(tau > 0.0) || tau > 1.0) {
    throw InvalidTau("boundary curve needs 0 < tau <= 1");
  }
  if (n < 2) throw ValidationError("n", "boundary curve needs at least 2 points");

  BoundaryCurve curve{UnitScore{tau}, {}};
  curve.points.reserve(n);
  const double span = 1.0 - tau;
  for (std::size_t k = 0; k < n; ++k) {
    const double aix =
        (k + 1 == n) ? 1.0 : tau + span * static_cast<double>(k) / static_cast<double>(n - 1);
    double icc = std::min(1.0, tau / aix);
    while (aix * icc > tau) icc = std::nextafter(icc, 0.0);
    curve.points.push_back({aix, icc});
  }
  return curve;
}

RegimeGrid regime_grid(const ClassifierConfig& cfg, std::size_t n) {
  if (n < 2) throw ValidationError("resolution", "must be at least 2");
  std::vector<RegimeLabel> labels(n * n);
  const auto center = [n](std::size_t i) {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const UnitScore aix{center(i)};
    for (std::size_t j = 0; j < n; ++j) {
      labels[i * n + j] = classify_regime(aix, UnitScore{center(j)}, cfg);
    }
  }
  return RegimeGrid{n, std::move(labels)};
}

std::vector<PhasePoint> project_trajectory(const Trajectory& traj) {
  std::vector<PhasePoint> out;
  out.reserve(traj.points.size());
  for (const auto& p : traj.points) out.push_back({p.aix.value(), p.icc.value()});
  return out;
}

std::vector<PositionedDomain> position_domains(const std::vector<DomainAssessment>& assessments,
                                               const ClassifierConfig& cfg) {
  if (assessments.empty()) throw ValidationError("domains", "list must be nonempty");
  std::vector<PositionedDomain> out;
  out.reserve(assessments.size());
  for (const auto& a : assessments) {
    const DomainReport r = assess_domain(a, cfg);
    out.push_back({r.name, r.aix, r.icc, r.ttp, r.stage, is_transitioned(r.ttp, cfg.tau())});
  }
  return out;
}

}  // namespace anai
