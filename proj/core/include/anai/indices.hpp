#pragma once

// Static score algebra: autonomy index, infrastructure coupling coefficient,
// transition potential, and the regime / stage classifiers built on them.

#include <array>
#include <string>
#include <string_view>

namespace anai {

// A dimensionless score in [0, 1]. Construction rejects anything else,
// including NaN, so downstream code never re-checks ranges.
class UnitScore {
 public:
  constexpr UnitScore() = default;
  explicit UnitScore(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

  friend constexpr auto operator<=>(UnitScore, UnitScore) = default;

 private:
  double value_ = 0.0;
};

// Returns a UnitScore, reporting `field` in the ValidationError on failure.
UnitScore checked_score(double value, std::string_view field);

struct AutonomyComponents {
  UnitScore d;  // decision independence
  UnitScore e;  // execution autonomy
  UnitScore r;  // real-time adaptive responsiveness
  UnitScore m;  // model self-modification capacity
};

struct InfraComponents {
  UnitScore e_p;  // energy infrastructure penetration
  UnitScore d_p;  // data infrastructure dependence
  UnitScore p_p;  // physical system embedding
};

enum class RegimeLabel {
  TraditionalDigital,
  IsolatedAutonomous,
  DigitallyOptimizedHumanCentered,
  AnaiRegime,
};

// Ordered by ascending transition potential.
enum class StageLabel { Emerging, Transitional, NearAnai, Anai };

std::string_view to_string(RegimeLabel label) noexcept;
std::string_view to_string(StageLabel label) noexcept;

inline constexpr double kDefaultTau = 0.5;
inline constexpr double kDefaultHighCut = 0.5;

class ClassifierConfig {
 public:
  // tau = 0.5, high_cut = 0.5, stage cuts {0.35, 0.45, 0.5}.
  ClassifierConfig();

  // Throws ValidationError unless the cuts are strictly ascending, the last
  // cut equals tau, and 0 < high_cut < 1.
  ClassifierConfig(UnitScore tau, UnitScore high_cut,
                   std::array<double, 3> stage_cuts);

  // Default bands scaled to an arbitrary threshold: {0.7 tau, 0.9 tau, tau}.
  // At tau = 0.5 this is exactly the default configuration.
  static ClassifierConfig for_tau(UnitScore tau,
                                  UnitScore high_cut = UnitScore{kDefaultHighCut});

  UnitScore tau() const noexcept { return tau_; }
  UnitScore high_cut() const noexcept { return high_cut_; }
  const std::array<double, 3>& stage_cuts() const noexcept { return cuts_; }

 private:
  UnitScore tau_;
  UnitScore high_cut_;
  std::array<double, 3> cuts_;
};

struct DomainAssessment {
  std::string name;
  AutonomyComponents autonomy;
  InfraComponents infra;
};

struct RegimeClassification {
  RegimeLabel label = RegimeLabel::TraditionalDigital;
  // Set when both scores are "high" but the product has not passed tau; the
  // label then names the nearer sub-threshold quadrant.
  bool near_boundary = false;
};

struct DomainReport {
  std::string name;
  UnitScore aix;
  UnitScore icc;
  UnitScore ttp;
  RegimeClassification regime;
  StageLabel stage = StageLabel::Emerging;
  double distance_to_threshold = 0.0;  // tau - ttp, signed
};

UnitScore autonomy_index(const AutonomyComponents& c) noexcept;
UnitScore coupling_coefficient(const InfraComponents& c) noexcept;
UnitScore transition_potential(UnitScore aix, UnitScore icc) noexcept;

// Strict: a potential equal to tau has not transitioned.
bool is_transitioned(UnitScore ttp, UnitScore tau) noexcept;

RegimeLabel classify_regime(UnitScore aix, UnitScore icc,
                            const ClassifierConfig& cfg) noexcept;
RegimeClassification classify_regime_detailed(UnitScore aix, UnitScore icc,
                                              const ClassifierConfig& cfg) noexcept;

StageLabel classify_stage(UnitScore ttp, const ClassifierConfig& cfg) noexcept;

DomainReport assess_domain(const DomainAssessment& a, const ClassifierConfig& cfg);

// Half-up rounding for table comparisons. A 1e-9 guard absorbs binary
// representation error so 0.4875 rounds to 0.49.
double round_half_up(double value, int decimals);

}  // namespace anai
