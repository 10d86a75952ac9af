#include "anai/indices.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "anai/errors.hpp"

namespace anai {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }  // false for NaN

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

UnitScore::UnitScore(double value) : value_(value) {
  if (!in_unit_interval(value)) {
    throw ValidationError("", "score " + format_value(value) + " outside [0, 1]");
  }
}

UnitScore checked_score(double value, std::string_view field) {
  if (!in_unit_interval(value)) {
    throw ValidationError(std::string(field),
                          "must lie in [0, 1], got " + format_value(value));
  }
  return UnitScore{value};
}

std::string_view to_string(RegimeLabel label) noexcept {
  switch (label) {
    case RegimeLabel::TraditionalDigital: return "TraditionalDigital";
    case RegimeLabel::IsolatedAutonomous: return "IsolatedAutonomous";
    case RegimeLabel::DigitallyOptimizedHumanCentered: return "DigitallyOptimizedHumanCentered";
    case RegimeLabel::AnaiRegime: return "AnaiRegime";
  }
  return "?";
}

std::string_view to_string(StageLabel label) noexcept {
  switch (label) {
    case StageLabel::Emerging: return "Emerging";
    case StageLabel::Transitional: return "Transitional";
    case StageLabel::NearAnai: return "NearAnai";
    case StageLabel::Anai: return "Anai";
  }
  return "?";
}

ClassifierConfig::ClassifierConfig()
    : tau_(kDefaultTau), high_cut_(kDefaultHighCut), cuts_{0.35, 0.45, kDefaultTau} {}

ClassifierConfig::ClassifierConfig(UnitScore tau, UnitScore high_cut,
                                   std::array<double, 3> stage_cuts)
    : tau_(tau), high_cut_(high_cut), cuts_(stage_cuts) {
  if (!(high_cut.value() > 0.0 && high_cut.value() < 1.0)) {
    throw ValidationError("classifier.high_cut", "must satisfy 0 < high_cut < 1");
  }
  for (double c : cuts_) {
    if (!in_unit_interval(c)) {
      throw ValidationError("classifier.stage_bands", "cut points must lie in [0, 1]");
    }
  }
  if (!(cuts_[0] < cuts_[1] && cuts_[1] < cuts_[2])) {
    throw ValidationError("classifier.stage_bands", "cut points must be strictly ascending");
  }
  if (cuts_[2] != tau.value()) {
    throw ValidationError("classifier.stage_bands", "top cut point must equal tau");
  }
}

ClassifierConfig ClassifierConfig::for_tau(UnitScore tau, UnitScore high_cut) {
  if (tau.value() <= 0.0) {
    throw ValidationError("tau", "stage bands need tau > 0");
  }
  return ClassifierConfig{tau, high_cut, {0.7 * tau.value(), 0.9 * tau.value(), tau.value()}};
}

UnitScore autonomy_index(const AutonomyComponents& c) noexcept {
  return UnitScore{(c.d.value() + c.e.value() + c.r.value() + c.m.value()) / 4.0};
}

UnitScore coupling_coefficient(const InfraComponents& c) noexcept {
  return UnitScore{c.e_p.value() * c.d_p.value() * c.p_p.value()};
}

UnitScore transition_potential(UnitScore aix, UnitScore icc) noexcept {
  return UnitScore{aix.value() * icc.value()};
}

bool is_transitioned(UnitScore ttp, UnitScore tau) noexcept {
  return ttp.value() > tau.value();
}

RegimeClassification classify_regime_detailed(UnitScore aix, UnitScore icc,
                                              const ClassifierConfig& cfg) noexcept {
  if (is_transitioned(transition_potential(aix, icc), cfg.tau())) {
    return {RegimeLabel::AnaiRegime, false};
  }
  const double cut = cfg.high_cut().value();
  const bool high_a = aix.value() >= cut;
  const bool high_i = icc.value() >= cut;
  if (high_a && high_i) {
    // The nearer quadrant is the one reached by dropping the coordinate that
    // sits closer to the cut. Ties go to the autonomy-led quadrant.
    const auto label = (aix.value() >= icc.value())
                           ? RegimeLabel::IsolatedAutonomous
                           : RegimeLabel::DigitallyOptimizedHumanCentered;
    return {label, true};
  }
  if (high_a) return {RegimeLabel::IsolatedAutonomous, false};
  if (high_i) return {RegimeLabel::DigitallyOptimizedHumanCentered, false};
  return {RegimeLabel::TraditionalDigital, false};
}

RegimeLabel classify_regime(UnitScore aix, UnitScore icc, const ClassifierConfig& cfg) noexcept {
  return classify_regime_detailed(aix, icc, cfg).label;
}

StageLabel classify_stage(UnitScore ttp, const ClassifierConfig& cfg) noexcept {
  const auto& cuts = cfg.stage_cuts();
  const double v = ttp.value();
  if (v < cuts[0]) return StageLabel::Emerging;
  if (v < cuts[1]) return StageLabel::Transitional;
  if (v < cuts[2]) return StageLabel::NearAnai;
  return StageLabel::Anai;
}

DomainReport assess_domain(const DomainAssessment& a, const ClassifierConfig& cfg) {
  if (a.name.empty()) {
    throw ValidationError("name", "domain name must be nonempty");
  }
  DomainReport report;
  report.name = a.name;
  report.aix = autonomy_index(a.autonomy);
  report.icc = coupling_coefficient(a.infra);
  report.ttp = transition_potential(report.aix, report.icc);
  report.regime = classify_regime_detailed(report.aix, report.icc, cfg);
  report.stage = classify_stage(report.ttp, cfg);
  report.distance_to_threshold = cfg.tau().value() - report.ttp.value();
  return report;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5 + 1e-9) / scale;
}

}  // namespace anai
