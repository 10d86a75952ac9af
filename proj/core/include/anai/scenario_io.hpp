#pragma once

// JSON scenario documents. Parsing is strict: unknown keys are rejected and
// every constraint failure names its field path.
//
//   {
//     "autonomy": {"rate": 0.5, "capacity": 0.9, "x0": 0.1},
//     "infra":    {"rate": 0.3, "capacity": 0.8, "x0": 0.05},
//     "tau": 0.5,
//     "grid": {"t_start": 0, "t_end": 50, "dt": 0.01},
//     "feedback": {"kappa_e": 1.0, "beta_f": 0.1, "gamma_c": 0.05, "c0": 1.0,
//                  "coupling_fn": "saturating", "c_half": 1.0,
//                  "icc_mode": "replace"},                       // optional
//     "classifier": {"high_cut": 0.5, "stage_bands": [0.35, 0.45, 0.5]},  // optional
//     "time_unit_label": "years"                                 // optional
//   }

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "anai/calibration.hpp"
#include "anai/dynamics.hpp"
#include "anai/indices.hpp"

namespace anai {

struct ClassifierSettings {
  std::optional<double> high_cut;
  std::optional<std::array<double, 3>> stage_bands;

  friend bool operator==(const ClassifierSettings&, const ClassifierSettings&) = default;
};

struct ScenarioDocument {
  ScenarioConfig config;
  std::optional<ClassifierSettings> classifier;
  std::optional<std::string> time_unit_label;  // display only

  // Classifier for the scenario's tau: explicit settings where given, the
  // default bands scaled to tau otherwise.
  ClassifierConfig classifier_config() const;

  friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

// Throws SyntaxError (with byte position) or ValidationError (with path).
ScenarioDocument parse_scenario_document(std::string_view text);
ScenarioConfig parse_scenario(std::string_view text);

std::string serialize_scenario(const ScenarioDocument& doc);
std::string serialize_scenario(const ScenarioConfig& config);

// {"<block>": {"rate": .., "capacity": .., "x0": ..}}, loadable as a
// scenario fragment.
std::string serialize_logistic_fragment(const LogisticParams& p, std::string_view block);

// {"parameter": "tau", "values": [0.3, 0.5, 0.7]}
SweepSpec parse_sweep_spec(std::string_view text, const ScenarioConfig& base);

}  // namespace anai
