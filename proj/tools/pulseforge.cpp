// Command-line frontend: error sweeps, FWHM table reproduction, and the
// built-in invariant suite, with CSV/SVG/manifest emission.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pulseforge/analysis.hpp"
#include "pulseforge/io.hpp"
#include "pulseforge/majorana.hpp"
#include "pulseforge/pulses.hpp"

using namespace pulseforge;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "pulseforge 1.0.0";

// PULSEFORGE_STEPS overrides steps_per_T everywhere in the CLI, so the
// integrator contract can be probed from the outside.
IntegratorConfig cli_integrator(int default_steps) {
  IntegratorConfig cfg;
  cfg.steps_per_T = default_steps;
  if (const char* env = std::getenv("PULSEFORGE_STEPS")) {
    const int steps = std::atoi(env);
    if (steps < 1) throw CLI::ValidationError("PULSEFORGE_STEPS must be a positive integer");
    cfg.steps_per_T = steps;
  }
  return cfg;
}

struct SweepArgs {
  int case_id = 1;
  std::string pulse = "pi";
  int n_pulses = 5;
  std::string phase = "same";
  std::string error = "rabi";
  std::string assign = "fixed-s";
  std::string order = "auto";
  std::string grid;
  std::string observable = "auto";
  std::string out = "sweep";
  double sta_n = 0.5;
};

Pulse build_pulse(int case_id, const std::string& name, double sta_n) {
  if (case_id == 1) {
    static const std::map<std::string, Case1Kind> kinds = {
        {"pi", Case1Kind::pi},
        {"flat-pi", Case1Kind::flat_pi},
        {"chirped-gaussian", Case1Kind::chirped_gaussian},
        {"allen-eberly", Case1Kind::allen_eberly},
        {"sta", Case1Kind::sta},
        {"resonant-gaussian", Case1Kind::resonant_gaussian},
    };
    const auto it = kinds.find(name);
    if (it == kinds.end())
      throw CLI::ValidationError("--pulse", "unknown case-1 pulse kind: " + name);
    return make_case1(it->second, sta_n);
  }
  static const std::map<std::string, Case2Kind> kinds = {
      {"cds", Case2Kind::cds},
      {"stirap-gaussian", Case2Kind::stirap_gaussian},
      {"stirap-sech", Case2Kind::stirap_sech},
      {"stirap-sin", Case2Kind::stirap_sin},
      {"stirap-sin2", Case2Kind::stirap_sin2},
  };
  const auto it = kinds.find(name);
  if (it == kinds.end())
    throw CLI::ValidationError("--pulse", "unknown case-2 pulse kind: " + name);
  return make_case2(it->second);
}

GridSpec parse_grid(const std::string& text, const std::string& error_kind) {
  if (text.empty())
    return error_kind == "detuning" ? GridSpec::detuning_default() : GridSpec::rabi_default();
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.min >> c1 >> g.max >> c2 >> g.points) || c1 != ':' || c2 != ':' || !in.eof())
    throw CLI::ValidationError("--grid", "expected min:max:points");
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--grid", e.what());
  }
  return g;
}

json integrator_json(const IntegratorConfig& cfg) {
  return {{"steps_per_T", cfg.steps_per_T}, {"unitarity_tolerance", cfg.unitarity_tolerance}};
}

void write_manifest(const std::string& path, const std::string& command, const json& config,
                    const IntegratorConfig& cfg, double wall_ms,
                    const std::vector<std::string>& outputs) {
  const json m = {{"command", command},          {"config", config},
                  {"artifact_version", kVersion}, {"integrator", integrator_json(cfg)},
                  {"wall_time_ms", wall_ms},      {"outputs", outputs}};
  io::write_text(path, m.dump(2));
}

int cmd_sweep(const SweepArgs& a) {
  const auto t_start = std::chrono::steady_clock::now();

  if (a.case_id != 1 && a.case_id != 2) throw CLI::ValidationError("--case", "must be 1 or 2");
  if (a.error == "arm" && a.case_id == 1)
    throw CLI::ValidationError("--error arm needs --case 2 (case 1 has one shared Omega)");
  if (a.error == "detuning" && a.case_id == 2)
    throw CLI::ValidationError("--error detuning needs --case 1 (case 2 is on resonance)");

  SweepConfig cfg;
  cfg.pulse = build_pulse(a.case_id, a.pulse, a.sta_n);
  cfg.sequence.n_pulses = a.n_pulses;
  cfg.sequence.phase = a.phase == "alt" ? PhasePolicy::alternating : PhasePolicy::same;
  if (a.phase != "alt" && a.phase != "same") throw CLI::ValidationError("--phase", "same or alt");

  // STIRAP sequences alternate the pulse time order; constant and case-1
  // pulses keep a fixed order.
  if (a.order == "auto")
    cfg.sequence.order = (a.case_id == 2 && a.pulse != "cds") ? OrderPolicy::alternate_time_reversal
                                                              : OrderPolicy::fixed;
  else if (a.order == "alt")
    cfg.sequence.order = OrderPolicy::alternate_time_reversal;
  else if (a.order == "fixed")
    cfg.sequence.order = OrderPolicy::fixed;
  else
    throw CLI::ValidationError("--order", "fixed, alt or auto");

  static const std::map<std::string, ArmAssignment> assigns = {
      {"fixed-p", ArmAssignment::fixed_p},
      {"fixed-s", ArmAssignment::fixed_s},
      {"alt", ArmAssignment::alternating_start_s},
  };
  const auto as = assigns.find(a.assign);
  if (as == assigns.end()) throw CLI::ValidationError("--assign", "fixed-p, fixed-s or alt");

  if (a.error == "rabi")
    cfg.error = ErrorModel::rabi_global(0.0);
  else if (a.error == "detuning")
    cfg.error = ErrorModel::detuning_static(0.0);
  else if (a.error == "arm")
    cfg.error = ErrorModel::rabi_arm(0.0, as->second);
  else
    throw CLI::ValidationError("--error", "rabi, detuning or arm");

  cfg.grid = parse_grid(a.grid, a.error);
  if (a.observable == "auto")
    cfg.observable = (a.case_id == 1 && a.n_pulses % 2 == 1) ? Observable::p3 : Observable::p1;
  else if (a.observable == "p1")
    cfg.observable = Observable::p1;
  else if (a.observable == "p3")
    cfg.observable = Observable::p3;
  else
    throw CLI::ValidationError("--observable", "p1 or p3");

  cfg.integrator = cli_integrator(4000);

  const SweepResult r = sweep(cfg);
  const FwhmResult f = fwhm(r);

  const std::string csv = a.out + ".csv";
  const std::string svg = a.out + ".svg";
  const std::string manifest = a.out + ".manifest.json";
  io::write_sweep_csv(csv, r);
  const std::string x_label = a.error == "rabi"      ? "Rabi error"
                              : a.error == "detuning" ? "static detuning"
                                                      : "arm Rabi error";
  const std::string y_label = cfg.observable == Observable::p1 ? "P1" : "P3";
  io::write_sweep_svg(svg, r, a.pulse + ", N=" + std::to_string(a.n_pulses) + ", " + a.phase +
                                  " phases",
                      x_label, y_label);

  const json config = {{"case", a.case_id},     {"pulse", a.pulse},     {"n", a.n_pulses},
                       {"phase", a.phase},      {"error", a.error},     {"assign", a.assign},
                       {"order", a.order},      {"grid", a.grid},       {"observable", a.observable},
                       {"sta_n", a.sta_n},      {"out", a.out}};
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t_start).count();
  write_manifest(manifest, "sweep", config, cfg.integrator, wall_ms, {csv, svg});

  std::cout << "wrote " << csv << ", " << svg << ", " << manifest << "\n";
  std::cout << "peak population at zero error: " << io::format_double(r.peak) << "\n";
  if (f.ok())
    std::cout << "FWHM = " << io::format_double(f.width) << "\n";
  else if (f.status == FwhmResult::Status::degenerate)
    std::cout << "FWHM degenerate: population at zero error is below 0.5\n";
  else
    std::cout << "FWHM absent: no half crossing inside the grid\n";
  return 0;
}

int cmd_table(int id, double tolerance_override, std::string out_base) {
  const auto t_start = std::chrono::steady_clock::now();
  const IntegratorConfig cfg = cli_integrator(2000);
  const TableResult t = reproduce_table(id, cfg);

  if (out_base.empty()) out_base = "table" + std::to_string(id);
  const std::string csv = out_base + ".csv";
  const std::string manifest = out_base + ".manifest.json";
  io::write_table_csv(csv, t);

  bool all_ok = true;
  for (const auto& c : t.cells) {
    ColumnTolerance tol = table_tolerance(id, c.scheme);
    if (tolerance_override > 0.0) tol = {true, tolerance_override};
    bool ok = false;
    if (c.degenerate) {
      std::cerr << c.scheme << " N=" << c.n_pulses
                << ": degenerate profile (population at zero error below half of nominal)\n";
    } else {
      ok = tol.relative ? std::abs(c.rel_dev()) <= tol.value : c.abs_dev() <= tol.value;
    }
    all_ok = all_ok && ok;
    std::cout << (ok ? "  ok   " : "  DEV  ") << c.scheme << " N=" << c.n_pulses << "  computed "
              << io::format_double(c.computed) << "  reference " << io::format_double(c.paper)
              << "  rel " << io::format_double(c.rel_dev()) << "\n";
  }
  if (!t.note.empty()) std::cout << "note: " << t.note << "\n";

  const json config = {{"id", id}, {"tolerance", tolerance_override}, {"out", out_base},
                       {"note", t.note}};
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t_start).count();
  write_manifest(manifest, "table", config, cfg, wall_ms, {csv});
  std::cout << "wrote " << csv << ", " << manifest << "\n";
  std::cout << (all_ok ? "all cells within tolerance\n" : "some cells out of tolerance\n");
  return all_ok ? 0 : 1;
}

// The invariant smoke suite behind `validate`.
int cmd_validate() {
  const IntegratorConfig cfg = cli_integrator(4000);
  bool all_ok = true;
  const auto group = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    all_ok = all_ok && ok;
  };

  // unitarity of every pulse family propagator
  {
    bool ok = true;
    for (const Case1Kind k : {Case1Kind::pi, Case1Kind::chirped_gaussian, Case1Kind::allen_eberly,
                              Case1Kind::sta, Case1Kind::flat_pi, Case1Kind::resonant_gaussian}) {
      const Pulse p = make_case1(k, 0.5);
      ok = ok && unitarity_defect(propagate_case1_numeric(p, cfg)) <= cfg.unitarity_tolerance;
      ok = ok && unitarity_defect(propagate_case1_unreduced(p, cfg)) <= cfg.unitarity_tolerance;
    }
    for (const Case2Kind k : {Case2Kind::cds, Case2Kind::stirap_gaussian, Case2Kind::stirap_sech,
                              Case2Kind::stirap_sin, Case2Kind::stirap_sin2}) {
      const Pulse p = make_case2(k);
      ok = ok && unitarity_defect(propagate_case2_numeric(p, cfg)) <= cfg.unitarity_tolerance;
    }
    group("unitarity", ok);
  }

  // numeric integration against the constant-Hamiltonian closed forms
  {
    bool ok = true;
    for (const double delta : {0.0, 0.4, -1.3}) {
      Pulse p = Pulse::constant_case1(std::sqrt(2.0) * std::acos(-1.0), delta, 0.0, 1.0);
      p.constant.reset();
      const Mat2 u = propagate_case1_numeric(p, cfg);
      const Mat2 v =
          propagate_constant_two_level(std::sqrt(2.0) * std::acos(-1.0), delta, 1.0).matrix();
      ok = ok && (u - v).cwiseAbs().maxCoeff() <= 1e-7;
    }
    for (const double eta : {0.0, 0.25}) {
      Pulse p = make_case2(Case2Kind::cds);
      p = apply_error(p, ErrorModel::rabi_arm(eta, ArmAssignment::fixed_p), 1);
      const Mat3 v = propagate_constant_three_level((*p.constant)[0], (*p.constant)[1], 1.0);
      p.constant.reset();
      const Mat3 u = propagate_case2_numeric(p, cfg);
      ok = ok && (u - v).cwiseAbs().maxCoeff() <= 1e-7;
    }
    group("oracle-equivalence", ok);
  }

  // identity properties of the composite sequences
  {
    bool ok = true;
    {
      const SequenceSpec s{4, PhasePolicy::alternating, OrderPolicy::fixed};
      const auto r = compose(make_case1(Case1Kind::pi), s, ErrorModel::rabi_global(0.3), cfg);
      ok = ok && (r.total - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-7;
    }
    for (const auto arm : {ArmAssignment::fixed_p, ArmAssignment::fixed_s}) {
      const SequenceSpec s{2, PhasePolicy::alternating, OrderPolicy::fixed};
      const auto r = compose(make_case2(Case2Kind::cds), s, ErrorModel::rabi_arm(0.25, arm), cfg);
      ok = ok && (r.total - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-7;
    }
    for (const Case2Kind k : {Case2Kind::stirap_gaussian, Case2Kind::stirap_sech,
                              Case2Kind::stirap_sin, Case2Kind::stirap_sin2}) {
      const SequenceSpec s{2, PhasePolicy::alternating, OrderPolicy::alternate_time_reversal};
      const auto r = compose(make_case2(k), s, ErrorModel::rabi_arm(0.0, ArmAssignment::alternating_start_s), cfg);
      ok = ok && (r.total - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-7;
    }
    group("identity-properties", ok);
  }

  // perturbative expansions against the exact closed forms
  {
    bool ok = true;
    for (const double delta : {0.01, 0.03, 0.05}) {
      const CayleyKlein ck =
          propagate_constant_two_level(std::sqrt(2.0) * std::acos(-1.0), delta, 1.0);
      for (const int n : {5, 9}) {
        ok = ok && std::abs(perturbative_population(ck, n, PhasePolicy::alternating) -
                            detuning_sequence_population(ck, n, PhasePolicy::alternating)) <= 5e-3;
      }
    }
    group("expansions", ok);
  }

  // Lewis-Riesenfeld phase consistency of the STA synthesis
  {
    const StaAngles ang{0.5};
    double acc = 0.0;
    bool ok = true;
    const int steps = 20000;
    for (int i = 0; i < steps; ++i) {
      const double t0 = static_cast<double>(i) / steps;
      const double t1 = static_cast<double>(i + 1) / steps;
      const auto rate = [&](double t) {
        const double th = ang.theta(t);
        const double g = ang.gamma(t);
        // near the window ends the ratio is noise-dominated; use the limit
        if (std::abs(std::sin(th)) < 1e-9)
          return -ang.theta_dot() * (1.0 + 2.0 * ang.n * std::cos(2.0 * th));
        return ang.theta_dot() * std::cos(g) / (2.0 * std::sin(th) * std::sin(g));
      };
      acc += (t1 - t0) / 6.0 * (rate(t0) + 4.0 * rate(0.5 * (t0 + t1)) + rate(t1));
      const double want = ang.epsilon_plus(t1) - ang.epsilon_plus(0.0);
      ok = ok && std::abs(acc - want) <= 1e-6;
    }
    group("sta-phase", ok);
  }

  // q_s of the n = 0.5 STA pulse
  {
    const double qs = q_sensitivity(make_case1(Case1Kind::sta, 0.5), 1e-3, cfg);
    group("q-sensitivity", std::abs(qs - 1.91) <= 0.05);
  }

  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulseforge: composite-pulse sequences on three-level systems"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep an error parameter and write csv/svg");
  sweep_cmd->add_option("--case", sa.case_id, "Hamiltonian family: 1 or 2")->required();
  sweep_cmd->add_option("--pulse", sa.pulse, "pulse kind")->required();
  sweep_cmd->add_option("--n", sa.n_pulses, "number of pulses")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--phase", sa.phase, "same | alt");
  sweep_cmd->add_option("--error", sa.error, "rabi | detuning | arm");
  sweep_cmd->add_option("--assign", sa.assign, "fixed-p | fixed-s | alt");
  sweep_cmd->add_option("--order", sa.order, "fixed | alt | auto");
  sweep_cmd->add_option("--grid", sa.grid, "min:max:points (default per error channel)");
  sweep_cmd->add_option("--observable", sa.observable, "p1 | p3 | auto");
  sweep_cmd->add_option("--sta-n", sa.sta_n, "free parameter of the sta pulse");
  sweep_cmd->add_option("--out", sa.out, "output path base");

  int table_id = 1;
  double table_tol = 0.0;
  std::string table_out;
  auto* table_cmd = app.add_subcommand("table", "reproduce an FWHM summary table");
  table_cmd->add_option("--id", table_id, "table id: 1, 2 or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  table_cmd->add_option("--tolerance", table_tol,
                        "override per-column tolerances with one relative tolerance");
  table_cmd->add_option("--out", table_out, "output path base (default table<id>)");

  auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite");

  try {
    app.parse(argc, argv);
    if (sweep_cmd->parsed()) return cmd_sweep(sa);
    if (table_cmd->parsed()) return cmd_table(table_id, table_tol, table_out);
    if (validate_cmd->parsed()) return cmd_validate();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
