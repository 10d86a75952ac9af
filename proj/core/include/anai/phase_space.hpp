#pragma once

// Geometry of the AIx-ICC plane: the tau-hyperbola, regime grids, trajectory
// projection, and positioning of assessed domains.

#include <cstddef>
#include <string>
#include <vector>

#include "anai/dynamics.hpp"
#include "anai/indices.hpp"

namespace anai {

struct PhasePoint {
  double aix = 0.0;
  double icc = 0.0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

struct BoundaryCurve {
  UnitScore tau;
  std::vector<PhasePoint> points;  // aix ascending on [tau, 1], icc = tau / aix
};

// n x n labels at cell centers ((i + 0.5) / n, (j + 0.5) / n), i indexing
// aix and j indexing icc.
class RegimeGrid {
 public:
  RegimeGrid(std::size_t resolution, std::vector<RegimeLabel> labels);

  std::size_t resolution() const noexcept { return n_; }
  RegimeLabel at(std::size_t i, std::size_t j) const { return labels_.at(i * n_ + j); }
  double center(std::size_t i) const noexcept {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(n_);
  }
  std::size_t count(RegimeLabel label) const noexcept;

 private:
  std::size_t n_;
  std::vector<RegimeLabel> labels_;
};

struct PositionedDomain {
  std::string name;
  UnitScore aix;
  UnitScore icc;
  UnitScore ttp;
  StageLabel stage = StageLabel::Emerging;
  bool above_boundary = false;
};

// Throws InvalidTau for tau <= 0, ValidationError for n < 2. Each point is
// nudged by at most one ulp so that aix * icc never exceeds tau.
BoundaryCurve boundary_curve(double tau, std::size_t n);

RegimeGrid regime_grid(const ClassifierConfig& cfg, std::size_t n);

std::vector<PhasePoint> project_trajectory(const Trajectory& traj);

std::vector<PositionedDomain> position_domains(const std::vector<DomainAssessment>& assessments,
                                               const ClassifierConfig& cfg);

}  // namespace anai
