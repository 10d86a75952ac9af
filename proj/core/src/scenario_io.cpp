#include "anai/scenario_io.hpp"

#include <initializer_list>
#include <string>

#include "json.hpp"

#include "anai/errors.hpp"

namespace anai {

namespace {

using nlohmann::json;

std::string join(std::string_view path, std::string_view key) {
  if (path.empty()) return std::string(key);
  return std::string(path) + "." + std::string(key);
}

// Rejects keys outside `allowed` and non-object nodes.
void check_object(const json& node, std::string_view path,
                  std::initializer_list<std::string_view> allowed) {
  if (!node.is_object()) {
    throw ValidationError(path.empty() ? "<root>" : std::string(path), "must be an object");
  }
  for (const auto& [key, _] : node.items()) {
    bool known = false;
    for (auto a : allowed) known = known || (a == key);
    if (!known) throw ValidationError(join(path, key), "unknown key");
  }
}

const json& require(const json& node, std::string_view path, std::string_view key) {
  const auto it = node.find(std::string(key));
  if (it == node.end()) throw ValidationError(join(path, key), "required key is missing");
  return *it;
}

double number(const json& node, std::string_view path) {
  if (!node.is_number()) throw ValidationError(std::string(path), "must be a number");
  return node.get<double>();
}

double required_number(const json& node, std::string_view path, std::string_view key) {
  return number(require(node, path, key), join(path, key));
}

std::optional<double> optional_number(const json& node, std::string_view path,
                                      std::string_view key) {
  const auto it = node.find(std::string(key));
  if (it == node.end()) return std::nullopt;
  return number(*it, join(path, key));
}

std::string string_value(const json& node, std::string_view path) {
  if (!node.is_string()) throw ValidationError(std::string(path), "must be a string");
  return node.get<std::string>();
}

LogisticParams parse_logistic(const json& node, std::string_view path) {
  check_object(node, path, {"rate", "capacity", "x0"});
  LogisticParams p{required_number(node, path, "rate"), required_number(node, path, "capacity"),
                   required_number(node, path, "x0")};
  p.validate(path);
  return p;
}

FeedbackParams parse_feedback(const json& node) {
  constexpr std::string_view path = "feedback";
  check_object(node, path,
               {"kappa_e", "beta_f", "gamma_c", "c0", "coupling_fn", "c_half", "icc_mode"});
  FeedbackParams f;
  f.kappa_e = required_number(node, path, "kappa_e");
  f.beta_f = required_number(node, path, "beta_f");
  f.gamma_c = required_number(node, path, "gamma_c");
  f.c0 = required_number(node, path, "c0");
  f.c_half = optional_number(node, path, "c_half");
  if (const auto it = node.find("coupling_fn"); it != node.end()) {
    const std::string name = string_value(*it, "feedback.coupling_fn");
    if (name == "linear") {
      f.coupling_fn = CouplingFunction::Linear;
    } else if (name == "log") {
      f.coupling_fn = CouplingFunction::Log;
    } else if (name == "saturating") {
      f.coupling_fn = CouplingFunction::Saturating;
    } else {
      throw ValidationError("feedback.coupling_fn",
                            "must be one of linear, log, saturating (got '" + name + "')");
    }
  }
  if (f.c_half && f.coupling_fn != CouplingFunction::Saturating) {
    throw ValidationError("feedback.c_half", "only valid with coupling_fn saturating");
  }
  if (const auto it = node.find("icc_mode"); it != node.end()) {
    const std::string mode = string_value(*it, "feedback.icc_mode");
    if (mode == "replace") {
      f.mode = FeedbackMode::Replace;
    } else if (mode == "additive") {
      f.mode = FeedbackMode::Additive;
    } else {
      throw ValidationError("feedback.icc_mode", "must be replace or additive (got '" + mode + "')");
    }
  }
  f.validate(path);
  return f;
}

TimeGrid parse_grid(const json& node) {
  constexpr std::string_view path = "grid";
  check_object(node, path, {"t_start", "t_end", "dt"});
  TimeGrid g{required_number(node, path, "t_start"), required_number(node, path, "t_end"),
             required_number(node, path, "dt")};
  g.validate(path);
  return g;
}

ClassifierSettings parse_classifier(const json& node) {
  constexpr std::string_view path = "classifier";
  check_object(node, path, {"high_cut", "stage_bands"});
  ClassifierSettings c;
  c.high_cut = optional_number(node, path, "high_cut");
  if (const auto it = node.find("stage_bands"); it != node.end()) {
    if (!it->is_array() || it->size() != 3) {
      throw ValidationError("classifier.stage_bands", "must be an array of 3 numbers");
    }
    std::array<double, 3> bands{};
    for (std::size_t i = 0; i < 3; ++i) {
      bands[i] = number((*it)[i], "classifier.stage_bands[" + std::to_string(i) + "]");
    }
    c.stage_bands = bands;
  }
  return c;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SyntaxError(std::string("JSON syntax error at byte ") + std::to_string(e.byte) + ": " +
                          e.what(),
                      e.byte);
  }
}

json logistic_json(const LogisticParams& p) {
  return json{{"rate", p.rate}, {"capacity", p.capacity}, {"x0", p.x0}};
}

}  // namespace

ClassifierConfig ScenarioDocument::classifier_config() const {
  const UnitScore tau = config.tau;
  UnitScore high_cut{kDefaultHighCut};
  if (classifier && classifier->high_cut) {
    high_cut = checked_score(*classifier->high_cut, "classifier.high_cut");
  }
  if (classifier && classifier->stage_bands) {
    return ClassifierConfig{tau, high_cut, *classifier->stage_bands};
  }
  return ClassifierConfig::for_tau(tau, high_cut);
}

ScenarioDocument parse_scenario_document(std::string_view text) {
  const json root = parse_json(text);
  check_object(root, "",
               {"autonomy", "infra", "tau", "feedback", "grid", "classifier", "time_unit_label"});

  ScenarioDocument doc;
  doc.config.autonomy = parse_logistic(require(root, "", "autonomy"), "autonomy");
  doc.config.infra = parse_logistic(require(root, "", "infra"), "infra");
  doc.config.tau = checked_score(required_number(root, "", "tau"), "tau");
  if (const auto it = root.find("feedback"); it != root.end()) {
    doc.config.feedback = parse_feedback(*it);
  }
  doc.config.grid = parse_grid(require(root, "", "grid"));
  if (const auto it = root.find("classifier"); it != root.end()) {
    doc.classifier = parse_classifier(*it);
    (void)doc.classifier_config();
  }
  if (const auto it = root.find("time_unit_label"); it != root.end()) {
    doc.time_unit_label = string_value(*it, "time_unit_label");
  }
  doc.config.validate();
  return doc;
}

ScenarioConfig parse_scenario(std::string_view text) {
  return parse_scenario_document(text).config;
}

std::string serialize_scenario(const ScenarioDocument& doc) {
  const ScenarioConfig& c = doc.config;
  json root;
  root["autonomy"] = logistic_json(c.autonomy);
  root["infra"] = logistic_json(c.infra);
  root["tau"] = c.tau.value();
  root["grid"] = json{{"t_start", c.grid.t_start}, {"t_end", c.grid.t_end}, {"dt", c.grid.dt}};
  if (c.feedback) {
    const FeedbackParams& f = *c.feedback;
    json fb{{"kappa_e", f.kappa_e},
            {"beta_f", f.beta_f},
            {"gamma_c", f.gamma_c},
            {"c0", f.c0},
            {"coupling_fn", std::string(to_string(f.coupling_fn))},
            {"icc_mode", std::string(to_string(f.mode))}};
    if (f.c_half) fb["c_half"] = *f.c_half;
    root["feedback"] = std::move(fb);
  }
  if (doc.classifier) {
    json cl = json::object();
    if (doc.classifier->high_cut) cl["high_cut"] = *doc.classifier->high_cut;
    if (doc.classifier->stage_bands) cl["stage_bands"] = *doc.classifier->stage_bands;
    root["classifier"] = std::move(cl);
  }
  if (doc.time_unit_label) root["time_unit_label"] = *doc.time_unit_label;
  return root.dump(2) + "\n";
}

std::string serialize_scenario(const ScenarioConfig& config) {
  return serialize_scenario(ScenarioDocument{config, std::nullopt, std::nullopt});
}

std::string serialize_logistic_fragment(const LogisticParams& p, std::string_view block) {
  json root;
  root[std::string(block)] = logistic_json(p);
  return root.dump(2) + "\n";
}

SweepSpec parse_sweep_spec(std::string_view text, const ScenarioConfig& base) {
  const json root = parse_json(text);
  check_object(root, "", {"parameter", "values"});
  const SweepParameter param =
      parse_sweep_parameter(string_value(require(root, "", "parameter"), "parameter"));
  const json& values = require(root, "", "values");
  if (!values.is_array()) throw ValidationError("values", "must be an array of numbers");
  std::vector<double> vs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    vs.push_back(number(values[i], "values[" + std::to_string(i) + "]"));
  }
  return SweepSpec{base, param, std::move(vs)};
}

}  // namespace anai
