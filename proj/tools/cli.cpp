#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "anai/anai.hpp"

namespace anai::cli {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << data;
  if (!out) throw IoError("write error on '" + path + "'");
}

// Writes to --out when given, otherwise to the data stream.
void emit(const std::string& out_path, std::ostream& out, const std::string& data) {
  if (out_path.empty()) {
    out << data;
  } else {
    write_file(out_path, data);
  }
}

ClassifierConfig classifier_for(double tau, double high_cut) {
  return ClassifierConfig::for_tau(checked_score(tau, "--tau"),
                                   checked_score(high_cut, "--high-cut"));
}

// ---------------------------------------------------------------------------

struct IndicesArgs {
  double aix = 0, icc = 0;
  double d = 0, e = 0, r = 0, m = 0;
  double e_p = 0, d_p = 0, p_p = 0;
  double tau = kDefaultTau;
  double high_cut = kDefaultHighCut;
  std::string domains;
  std::string out;
  CLI::Option* aix_opt = nullptr;
  CLI::Option* icc_opt = nullptr;
  std::vector<CLI::Option*> autonomy_opts;
  std::vector<CLI::Option*> infra_opts;
};

UnitScore score_from(CLI::Option* direct, double direct_value,
                     const std::vector<CLI::Option*>& parts, const char* what,
                     const std::function<UnitScore()>& combine) {
  std::size_t given = 0;
  for (auto* o : parts) given += o->count() > 0 ? 1 : 0;
  if (direct->count() > 0) {
    if (given > 0) {
      throw ValidationError(what, "give either the index or its components, not both");
    }
    return checked_score(direct_value, direct->get_name());
  }
  if (given != parts.size()) {
    throw ValidationError(what, "needs the index flag or every component flag");
  }
  return combine();
}

int run_indices(const IndicesArgs& a, std::ostream& out) {
  const ClassifierConfig cfg = classifier_for(a.tau, a.high_cut);

  if (!a.domains.empty()) {
    std::istringstream in(read_file(a.domains));
    std::ostringstream csv;
    csv << "name,aix,icc,ttp,regime,stage,distance,near_boundary\n";
    for (const auto& d : read_domains_csv(in)) {
      const DomainReport r = assess_domain(d, cfg);
      csv << r.name << ',' << fixed4(r.aix) << ',' << fixed4(r.icc) << ',' << fixed4(r.ttp) << ','
          << to_string(r.regime.label) << ',' << to_string(r.stage) << ','
          << fixed4(r.distance_to_threshold) << ',' << (r.regime.near_boundary ? "true" : "false")
          << '\n';
    }
    emit(a.out, out, csv.str());
    return kSuccess;
  }

  const UnitScore aix = score_from(a.aix_opt, a.aix, a.autonomy_opts, "autonomy", [&] {
    return autonomy_index({checked_score(a.d, "--d"), checked_score(a.e, "--e"),
                           checked_score(a.r, "--r"), checked_score(a.m, "--m")});
  });
  const UnitScore icc = score_from(a.icc_opt, a.icc, a.infra_opts, "infra", [&] {
    return coupling_coefficient({checked_score(a.e_p, "--e-p"), checked_score(a.d_p, "--d-p"),
                                 checked_score(a.p_p, "--p-p")});
  });
  const UnitScore ttp = transition_potential(aix, icc);
  const auto regime = classify_regime_detailed(aix, icc, cfg);

  std::ostringstream report;
  report << "AIx          " << fixed4(aix) << '\n'
         << "ICC          " << fixed4(icc) << '\n'
         << "TTP          " << fixed4(ttp) << '\n'
         << "tau          " << fixed4(cfg.tau()) << '\n'
         << "transitioned " << (is_transitioned(ttp, cfg.tau()) ? "yes" : "no") << '\n'
         << "regime       " << to_string(regime.label)
         << (regime.near_boundary ? " (near boundary)" : "") << '\n'
         << "stage        " << to_string(classify_stage(ttp, cfg)) << '\n'
         << "tau - TTP    " << fixed4(cfg.tau() - ttp) << '\n';
  emit(a.out, out, report.str());
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
  std::string out;
};

int run_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const ScenarioDocument doc = parse_scenario_document(read_file(a.scenario));
  const Trajectory traj = simulate(doc.config);

  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  emit(a.out, out, csv.str());

  const std::string unit = doc.time_unit_label ? " " + *doc.time_unit_label : "";
  std::ostringstream summary;
  if (traj.crossing) {
    summary << "crossing: t=" << format_number(traj.crossing->t_cross) << unit
            << " ttp=" << format_number(traj.crossing->ttp_at_cross)
            << " tau=" << format_number(doc.config.tau) << '\n';
  } else {
    summary << "crossing: none (tau=" << format_number(doc.config.tau) << ")\n";
  }
  // Keep stdout pure CSV when it carries the trajectory.
  (a.out.empty() ? err : out) << summary.str();
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct PhaseArgs {
  double tau = kDefaultTau;
  double high_cut = kDefaultHighCut;
  std::size_t resolution = 32;
  std::size_t points = 101;
  std::string domains;
  std::string out;  // directory
};

int run_phase(const PhaseArgs& a, std::ostream& out) {
  const ClassifierConfig cfg = classifier_for(a.tau, a.high_cut);
  std::ostringstream boundary;
  write_boundary_csv(boundary, boundary_curve(a.tau, a.points));
  std::ostringstream grid;
  write_grid_csv(grid, regime_grid(cfg, a.resolution));
  std::optional<std::string> domains;
  if (!a.domains.empty()) {
    std::istringstream in(read_file(a.domains));
    std::ostringstream csv;
    write_positioned_domains_csv(csv, position_domains(read_domains_csv(in), cfg));
    domains = csv.str();
  }

  if (a.out.empty()) {
    out << "# boundary\n" << boundary.str() << "# grid\n" << grid.str();
    if (domains) out << "# domains\n" << *domains;
    return kSuccess;
  }
  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  if (ec) throw IoError("cannot create directory '" + a.out + "': " + ec.message());
  const std::filesystem::path dir(a.out);
  write_file((dir / "boundary.csv").string(), boundary.str());
  write_file((dir / "grid.csv").string(), grid.str());
  if (domains) write_file((dir / "domains.csv").string(), *domains);
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct CalibrateArgs {
  std::string series;
  std::string block = "autonomy";
  std::string out;
};

int run_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  std::istringstream in(read_file(a.series));
  const ObservedSeries series = read_series_csv(in, a.series);
  const FitResult fit = fit_logistic(series);
  emit(a.out, out, serialize_logistic_fragment(fit.params, a.block));
  err << "fit: sse=" << format_number(fit.sse) << " iterations=" << fit.iterations
      << " converged=" << (fit.converged ? "true" : "false") << '\n';
  if (!fit.converged) {
    throw NonConvergence("iteration cap reached; partial parameters written");
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string scenario;
  std::string sweep;
  std::string out;
};

int run_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const ScenarioConfig base = parse_scenario(read_file(a.scenario));
  const SweepSpec spec = parse_sweep_spec(read_file(a.sweep), base);
  const auto entries = sensitivity_sweep(spec);
  std::ostringstream csv;
  write_sweep_csv(csv, entries);
  emit(a.out, out, csv.str());
  for (const auto& e : entries) {
    if (const auto* f = std::get_if<SweepFailure>(&e.outcome)) {
      err << "sweep " << to_string(spec.parameter()) << "=" << format_number(e.value) << ": "
          << f->kind << ": " << f->message << '\n';
    }
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transition-potential simulator and analysis toolkit", "anai"};
  app.require_subcommand(1);

  IndicesArgs ia;
  auto* indices = app.add_subcommand("indices", "Compute AIx, ICC, TTP, regime and stage");
  ia.aix_opt = indices->add_option("--aix", ia.aix, "Autonomy index");
  ia.icc_opt = indices->add_option("--icc", ia.icc, "Infrastructure coupling coefficient");
  ia.autonomy_opts = {indices->add_option("--d", ia.d, "Decision independence"),
                      indices->add_option("--e", ia.e, "Execution autonomy"),
                      indices->add_option("--r", ia.r, "Real-time adaptive responsiveness"),
                      indices->add_option("--m", ia.m, "Model self-modification capacity")};
  ia.infra_opts = {indices->add_option("--e-p", ia.e_p, "Energy infrastructure penetration"),
                   indices->add_option("--d-p", ia.d_p, "Data infrastructure dependence"),
                   indices->add_option("--p-p", ia.p_p, "Physical system embedding")};
  indices->add_option("--domains", ia.domains, "Domain CSV (name,d,e,r,m,e_p,d_p,p_p)");
  indices->add_option("--tau", ia.tau, "Transition threshold")->capture_default_str();
  indices->add_option("--high-cut", ia.high_cut, "High/low quadrant cut")->capture_default_str();
  indices->add_option("--out", ia.out, "Output file");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Simulate a scenario to a trajectory CSV");
  sim->add_option("--scenario", sa.scenario, "Scenario JSON")->required();
  sim->add_option("--out", sa.out, "Trajectory CSV output file");

  PhaseArgs pa;
  auto* phase = app.add_subcommand("phase", "Boundary curve, regime grid, domain positions");
  phase->add_option("--tau", pa.tau, "Transition threshold")->capture_default_str();
  phase->add_option("--high-cut", pa.high_cut, "High/low quadrant cut")->capture_default_str();
  phase->add_option("--resolution", pa.resolution, "Regime grid cells per axis")
      ->capture_default_str();
  phase->add_option("--points", pa.points, "Boundary curve samples")->capture_default_str();
  phase->add_option("--domains", pa.domains, "Domain CSV to position");
  phase->add_option("--out", pa.out, "Output directory (boundary.csv, grid.csv, domains.csv)");

  CalibrateArgs ca;
  auto* cal = app.add_subcommand("calibrate", "Fit a logistic curve to a t,value series");
  cal->add_option("--series", ca.series, "Series CSV")->required();
  cal->add_option("--block", ca.block, "Scenario block name for the fragment")
      ->check(CLI::IsMember({"autonomy", "infra"}))
      ->capture_default_str();
  cal->add_option("--out", ca.out, "Fragment output file");

  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "Crossing time across one swept parameter");
  sweep->add_option("--scenario", wa.scenario, "Base scenario JSON")->required();
  sweep->add_option("--sweep", wa.sweep, "Sweep JSON {parameter, values}")->required();
  sweep->add_option("--out", wa.out, "Sweep CSV output file");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kInputFailure;
  }

  try {
    if (*indices) return run_indices(ia, out);
    if (*sim) return run_simulate(sa, out, err);
    if (*phase) return run_phase(pa, out);
    if (*cal) return run_calibrate(ca, out, err);
    if (*sweep) return run_sweep(wa, out, err);
  } catch (const InputError& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kInputFailure;
  } catch (const NumericalError& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const IoError& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kIoFailure;
  }
  return kInputFailure;
}

}  // namespace anai::cli
