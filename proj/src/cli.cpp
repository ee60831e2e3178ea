#include "router/cli.hpp"

#include "router/csv.hpp"
#include "router/experiments.hpp"
#include "router/hardware.hpp"
#include "router/zeeman.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

namespace router {

namespace {

constexpr const char* version_tag = "0.1.0";

const std::set<std::string> known_scenarios = {
    "absorb",       "full",     "sweep-abs", "sweep-phi", "mismatch-abs",
    "mismatch-em",  "optimize", "feasibility", "coil",    "adiabatic"};

double deg2rad(double deg) { return deg * consts::pi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / consts::pi; }

PhysicalUnits units_from(const Config& cfg) {
  PhysicalUnits u;
  u.cloud_length = cfg.get_num("units.cloud_length", 0.01);
  if (cfg.has("units.gamma")) {
    u.gamma = cfg.get_num("units.gamma");
  } else {
    const double ct = cfg.get_num("units.c_tilde", 850.0);
    if (!(ct > 0.0)) throw ConfigError("config: units.c_tilde must be positive");
    u.gamma = consts::c_light / (ct * u.cloud_length);
  }
  u.lambda_signal = cfg.get_num("units.lambda_signal", consts::lambda_d1);
  return u;
}

GridSpec grid_from(const Config& cfg) {
  GridSpec g;
  g.nx = static_cast<int>(cfg.get_int("grid.nx", g.nx));
  g.ny = static_cast<int>(cfg.get_int("grid.ny", g.ny));
  g.x_extent = cfg.get_num("grid.x_extent", g.x_extent);
  g.y_extent = cfg.get_num("grid.y_extent", g.y_extent);
  return g;
}

SimParams params_from(const Config& cfg) {
  const PhysicalUnits u = units_from(cfg);
  const GridSpec g = grid_from(cfg);
  SimParams pr = params_for_depth(u, g, cfg.get_num("sim.d"), cfg.get_num("sim.delta", 0.0));
  pr.decay_disabled = cfg.get_flag("sim.decay_disabled", false);
  return pr;
}

SignalSpec signal_from(const Config& cfg, const SimParams& pr) {
  SignalSpec s;
  s.w_par = cfg.get_num("signal.w_par", s.w_par);
  s.w_perp = cfg.get_num("signal.w_perp", s.w_perp);
  s.arrival_t = cfg.get_num("signal.arrival_t", 0.0);
  s.k_mis = cfg.get_num("signal.k_mis_gamma_c", 0.0) / pr.c_tilde;
  return s;
}

ControlSpec control_from(const Config& cfg, const std::string& prefix) {
  ControlSpec c;
  c.amplitude = cfg.get_num(prefix + "amplitude", 0.0);
  c.w_par = cfg.get_num(prefix + "w_par", c.w_par);
  c.w_perp = cfg.get_num(prefix + "w_perp", c.w_perp);
  c.theta = deg2rad(cfg.get_num(prefix + "theta_deg", 0.0));
  c.t0 = cfg.get_num(prefix + "t0", 0.0);
  c.x0 = cfg.get_num(prefix + "x0", 0.0);
  c.y0 = cfg.get_num(prefix + "y0", 0.0);
  return c;
}

Window window_from(const Config& cfg, const SimParams& pr, const SignalSpec& sig) {
  if (cfg.has("window.t_start") || cfg.has("window.t_end")) {
    Window w{cfg.get_num("window.t_start"), cfg.get_num("window.t_end")};
    if (!(w.duration() > 0.0)) throw ConfigError("config: window must have t_end > t_start");
    return w;
  }
  return default_absorption_window(pr, sig, cfg.get_num("window.margin_widths", 3.0));
}

std::string iso_utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& out, const Config& effective,
                    const std::string& scenario) {
  std::ofstream f(out + "/manifest.txt");
  if (!f) throw ConfigError("cannot write manifest in " + out);
  f << "# manifest, feed back with: router " << scenario << " --config manifest.txt\n";
  f << "# generated = " << iso_utc_now() << "\n";
  f << "# version = " << version_tag << "\n";
  f << render_config(effective);
}

void write_warnings(const std::string& out, const std::vector<std::string>& warnings) {
  std::ofstream f(out + "/warnings.txt");
  for (const auto& w : warnings) f << w << '\n';
}

void write_series(const std::string& path, const std::vector<SeriesRow>& series) {
  CsvWriter w(path, "t,N_ph,N_e,N_s,loss,leaked");
  for (const SeriesRow& r : series) w.row(r.t, r.n_ph, r.n_e, r.n_s, r.loss, r.leaked);
}

void write_field(const std::string& path, const ComplexField& f) {
  CsvWriter w(path, "x,y,re,im");
  const GridSpec& g = f.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      w.row(g.x(i), g.y(j), f.at(i, j).real(), f.at(i, j).imag());
}

void write_control(const std::string& path, const ControlSpec& c, double eta) {
  CsvWriter w(path, "amplitude,w_par,w_perp,theta_deg,t0,x0,y0,eta");
  w.row(c.amplitude, c.w_par, c.w_perp, rad2deg(c.theta), c.t0, c.x0, c.y0, eta);
}

int scenario_budget(const Config& cfg, int fallback) {
  const long b = cfg.get_int("optimize.budget", fallback);
  if (b < 0) throw ConfigError("config: optimize.budget must be >= 0");
  return static_cast<int>(b);
}

// optimize unless the budget is zero, in which case the configured control
// is used as-is
ControlSpec optimized_or_configured(const Config& cfg, const SimParams& pr,
                                    const SignalSpec& sig, const Window& win, unsigned seed,
                                    double theta, double* eta_out) {
  const int budget = scenario_budget(cfg, 120);
  const ControlSpec configured = control_from(cfg, "control.");
  if (budget == 0) {
    if (eta_out) *eta_out = std::numeric_limits<double>::quiet_NaN();
    return configured;
  }
  OptProblem prob = absorption_problem(pr, sig, theta, win, budget, seed);
  if (configured.amplitude > 0.0) prob.hints.insert(prob.hints.begin(), configured);
  const OptResult r = optimize(prob);
  if (eta_out) *eta_out = r.best_value;
  return r.best;
}

void run_absorb(const Config& cfg, const std::string& out, unsigned) {
  const SimParams pr = params_from(cfg);
  const SignalSpec sig = signal_from(cfg, pr);
  const ControlSpec ctl = control_from(cfg, "control.");
  const Window win = window_from(cfg, pr, sig);
  const RunResult rr =
      run_absorption(pr, sig, ctl, win, static_cast<int>(cfg.get_int("output.sample_stride", 0)));

  write_series(out + "/series.csv", rr.report.series);
  write_field(out + "/fields_S.csv", rr.state.S);
  write_field(out + "/fields_E.csv", rr.state.E);
  CsvWriter rep(out + "/report.csv", "eta_abs,ledger_max_dev");
  rep.row(rr.report.eta_abs, ledger_deviation(rr.report.series));
  write_warnings(out, rr.report.warnings);
}

void run_full_scenario(const Config& cfg, const std::string& out, unsigned seed) {
  const SimParams pr = params_from(cfg);
  const SignalSpec sig = signal_from(cfg, pr);
  const Window abs_win = window_from(cfg, pr, sig);
  const double phi = deg2rad(cfg.get_num("manipulation.phi_deg", 0.0));

  double eta_opt = 0.0;
  const ControlSpec ctl_abs =
      optimized_or_configured(cfg, pr, sig, abs_win, seed,
                              deg2rad(cfg.get_num("control.theta_deg", 0.0)), &eta_opt);

  FullWindows win;
  win.absorption = abs_win;
  win.emission_factor = cfg.get_num("window.emission_factor", 3.0);

  const WaveGeometry wg = geometry_for(pr.units, ctl_abs.theta);
  PhaseRamp ramp{delta_for_angle(phi, wg.k_s_mag)};
  const double scale = 1.0 + cfg.get_num("manipulation.delta_error_frac", 0.0);
  ramp.delta[0] *= scale;
  ramp.delta[1] *= scale;

  const Window em_win{abs_win.t_end, abs_win.t_end + win.emission_factor * abs_win.duration()};
  ControlSpec ctl_em;
  if (cfg.has("emission.amplitude")) {
    ctl_em = control_from(cfg, "emission.");
  } else {
    ctl_em = emission_control(ctl_abs, em_win, pr.c_tilde, pr.grid.x_extent);
  }

  const FullRunResult fr = run_full(pr, sig, ctl_abs, ramp, ctl_em, phi, win);

  write_series(out + "/series.csv", fr.report.series);
  write_field(out + "/stored_S.csv", fr.stored.S);
  write_field(out + "/snapshot_E.csv", fr.snapshot);
  write_control(out + "/control.csv", ctl_abs, fr.report.eta_abs);
  CsvWriter rep(out + "/report.csv",
                "eta_abs,eta_em,eta_total,phi_nominal_deg,phi_actual_deg,k_mis_cloud,ledger_max_dev");
  rep.row(fr.report.eta_abs, fr.report.eta_em, fr.report.eta_total, rad2deg(phi),
          rad2deg(fr.phi_actual), fr.k_mis, ledger_deviation(fr.report.series));
  write_warnings(out, fr.report.warnings);
}

void run_sweep_abs(const Config& cfg, const std::string& out, unsigned seed) {
  const PhysicalUnits u = units_from(cfg);
  const GridSpec g = grid_from(cfg);
  const SimParams probe = params_for_depth(u, g, 1.0, cfg.get_num("sim.delta", 0.0));
  const SignalSpec sig = signal_from(cfg, probe);
  const std::vector<double> depths = cfg.get_list("sweep.depths", {5, 8, 11, 14, 17, 20});
  std::vector<double> thetas;
  for (double t : cfg.get_list("sweep.thetas_deg", {0})) thetas.push_back(deg2rad(t));

  const auto rows = sweep_eta_abs(depths, thetas, u, g, cfg.get_num("sim.delta", 0.0), sig,
                                  scenario_budget(cfg, 120), seed);
  CsvWriter w(out + "/sweep.csv", "d,theta_deg,eta_abs,amplitude,w_par,w_perp,t0,x0");
  for (const SweepPoint& p : rows)
    w.row(p.d, rad2deg(p.theta), p.eta, p.best.amplitude, p.best.w_par, p.best.w_perp,
          p.best.t0, p.best.x0);
}

void run_sweep_phi(const Config& cfg, const std::string& out, unsigned seed) {
  const SimParams pr = params_from(cfg);
  const SignalSpec sig = signal_from(cfg, pr);
  const Window abs_win = window_from(cfg, pr, sig);

  double eta_opt = 0.0;
  const ControlSpec ctl =
      optimized_or_configured(cfg, pr, sig, abs_win, seed,
                              deg2rad(cfg.get_num("control.theta_deg", 0.0)), &eta_opt);

  FullWindows win;
  win.absorption = abs_win;
  win.emission_factor = cfg.get_num("window.emission_factor", 3.0);
  std::vector<double> phis;
  for (double p : cfg.get_list("sweep.phis_deg", {0, 45, 90, 135, 180}))
    phis.push_back(deg2rad(p));

  const auto rows = phi_sweep(pr, sig, ctl, phis, win);
  write_control(out + "/control.csv", ctl, rows.empty() ? 0.0 : rows.front().eta_abs);
  CsvWriter w(out + "/sweep.csv", "phi_deg,eta_abs,eta_em,eta_total,k_mis_cloud,ledger_max_dev");
  for (const PhiSweepRow& r : rows)
    w.row(rad2deg(r.phi), r.eta_abs, r.eta_em, r.eta_total, r.k_mis, r.ledger_dev);
}

void write_mismatch(const std::string& out, const char* k_header, const MismatchCurve& curve) {
  CsvWriter w(out + "/mismatch.csv", std::string(k_header) + ",eta,ledger_max_dev");
  for (size_t i = 0; i < curve.k.size(); ++i)
    w.row(curve.k[i], curve.eta[i], curve.ledger_dev[i]);
  CsvWriter fit(out + "/fit.csv", "width,eta0");
  fit.row(curve.fit.width, curve.fit.eta0);
}

void run_mismatch_abs(const Config& cfg, const std::string& out, unsigned seed) {
  const SimParams pr = params_from(cfg);
  const SignalSpec sig = signal_from(cfg, pr);
  const Window win = window_from(cfg, pr, sig);
  const ControlSpec ctl =
      optimized_or_configured(cfg, pr, sig, win, seed,
                              deg2rad(cfg.get_num("control.theta_deg", 0.0)), nullptr);
  const std::vector<double> ks =
      cfg.get_list("mismatch.k_gamma_c", {-16, -12, -8, -4, 0, 4, 8, 12, 16});
  write_mismatch(out, "k_gamma_c", mismatch_absorption(pr, sig, ctl, win, ks));
}

void run_mismatch_em(const Config& cfg, const std::string& out, unsigned seed) {
  const SimParams pr = params_from(cfg);
  const SignalSpec sig = signal_from(cfg, pr);
  const Window win = window_from(cfg, pr, sig);
  const ControlSpec ctl =
      optimized_or_configured(cfg, pr, sig, win, seed,
                              deg2rad(cfg.get_num("control.theta_deg", 0.0)), nullptr);
  const std::vector<double> ks =
      cfg.get_list("mismatch.k_per_L", {-4, -3, -2, -1, 0, 1, 2, 3, 4});
  write_mismatch(out, "k_per_L",
                 mismatch_emission(pr, sig, ctl, win, ks,
                                   cfg.get_num("window.emission_factor", 1.5)));
}

void run_optimize(const Config& cfg, const std::string& out, unsigned seed) {
  const SimParams pr = params_from(cfg);
  const SignalSpec sig = signal_from(cfg, pr);
  const Window win = window_from(cfg, pr, sig);
  OptProblem prob = absorption_problem(pr, sig, deg2rad(cfg.get_num("control.theta_deg", 0.0)),
                                       win, scenario_budget(cfg, 120), seed);
  const ControlSpec configured = control_from(cfg, "control.");
  if (configured.amplitude > 0.0) prob.hints.insert(prob.hints.begin(), configured);
  const OptResult r = optimize(prob);

  write_control(out + "/best.csv", r.best, r.best_value);
  CsvWriter trace(out + "/trace.csv", "index,value,running_max");
  double run_max = -std::numeric_limits<double>::infinity();
  for (const TracePoint& p : r.trace) {
    run_max = std::max(run_max, p.value);
    trace.row(p.index, p.value, run_max);
  }
}

void run_feasibility(const Config& cfg, const std::string& out, unsigned) {
  ZeemanConfig zc;
  zc.gradient = cfg.get_num("zeeman.gradient", zc.gradient);
  zc.mu_diff_over_hbar = cfg.get_num("zeeman.mu_diff_over_hbar", zc.mu_diff_over_hbar);
  zc.t_rise = cfg.get_num("zeeman.t_rise", zc.t_rise);
  const std::vector<double> temps = cfg.get_list(
      "feasibility.temps", {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0});
  const PhysicalUnits u = units_from(cfg);
  const std::vector<double> kappas = cfg.get_list(
      "feasibility.kappas", {1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 2.0 * u.k_signal()});

  CsvWriter w(out + "/feasibility.csv", "temperature_K,kappa_per_m,t_decoh_s,t_manip_s,class");
  for (const FeasibilityCell& c : feasibility_map(temps, kappas, zc))
    w.row(c.temperature, c.kappa_mag, c.t_decoh, c.t_manip, to_string(c.manipulable));
}

void run_coil(const Config& cfg, const std::string& out, unsigned) {
  const CoilDesign d = design_coil(cfg.get_num("coil.a", 0.01), cfg.get_num("coil.gradient", 50.0),
                                   cfg.get_num("coil.tau", 5e-6),
                                   static_cast<int>(cfg.get_int("coil.n_c", 63)));
  CsvWriter w(out + "/coil.csv",
              "a_m,n_c,current_A,voltage_V,inductance_H,gradient_G_per_cm,tau_s,"
              "efficiency_G_per_cm_per_A,ampere_turns,resistive_voltage_V");
  const double res = cfg.get_num("coil.resistance_ohm", 0.0);
  w.row(d.a, d.n_c, d.current, d.voltage, d.inductance, d.gradient, d.tau, d.efficiency_coeff,
        d.current * d.n_c, res * d.current);
}

void run_adiabatic(const Config& cfg, const std::string& out, unsigned) {
  const std::string name = cfg.get_str("adiabatic.subspace", "H1");
  Subspace s;
  if (name == "H1") s = Subspace::H1;
  else if (name == "H2") s = Subspace::H2;
  else if (name == "H3") s = Subspace::H3;
  else throw ConfigError("config: adiabatic.subspace must be H1, H2 or H3");

  const double tau = cfg.get_num("adiabatic.tau", 1e-6);
  const TwoLevelParams p = subspace_params(s, cfg.get_num("adiabatic.b0", 5000.0),
                                           cfg.get_num("adiabatic.b1", 250.0), tau);
  long steps = cfg.get_int("adiabatic.steps", 0);
  if (steps <= 0) {
    const double w_max = std::hypot(p.v, std::max(std::abs(p.eps), std::abs(p.eps + p.b * tau)));
    steps = std::max(1000L, static_cast<long>(std::ceil(w_max * tau / 0.05)));
  }
  const SweepResult r = two_level_sweep(p, steps);

  const double z = p.b != 0.0 ? landau_zener_z(p.v, p.b) : std::numeric_limits<double>::infinity();
  const double plz = p.b != 0.0 ? landau_zener_p(p.v, p.b) : 0.0;
  CsvWriter w(out + "/adiabatic.csv",
              "subspace,b0_G,b1_G,tau_s,v_rad_per_s,eps_rad_per_s,b_rad_per_s2,z,p_lz,survival");
  w.row(name, p.b0, p.b1, p.tau, p.v, p.eps, p.b, z, plz, r.survival);
  CsvWriter trace(out + "/trace.csv", "t_s,re0,im0,re1,im1,survival");
  for (const SweepRow& row : r.trace)
    trace.row(row.t, row.c0.real(), row.c0.imag(), row.c1.real(), row.c1.imag(), row.survival);
}

} // namespace

CliArgs parse_cli(int argc, const char* const* argv) {
  if (argc < 2)
    throw ConfigError("usage: router <scenario> --config <file> [--out <dir>] [--seed <n>]");
  CliArgs a;
  a.scenario = argv[1];
  for (int i = 2; i < argc; ++i) {
    const std::string flag = argv[i];
    auto next = [&](const char* what) -> std::string {
      if (i + 1 >= argc) throw ConfigError(std::string("missing value after ") + what);
      return argv[++i];
    };
    if (flag == "--config") a.config_path = next("--config");
    else if (flag == "--out") a.out_dir = next("--out");
    else if (flag == "--seed") a.seed = std::stol(next("--seed"));
    else throw ConfigError("unknown flag " + flag);
  }
  if (a.config_path.empty()) throw ConfigError("missing --config <file>");
  return a;
}

std::vector<std::string> validate(const Config& cfg) {
  std::vector<std::string> diags;
  const std::string scenario = cfg.get_str("scenario", "");
  if (scenario.empty())
    diags.push_back("info: no scenario key; the command line argument decides");
  else if (!known_scenarios.count(scenario))
    diags.push_back("error: unknown scenario " + scenario);

  const bool needs_pde =
      scenario != "coil" && scenario != "adiabatic" && scenario != "feasibility";
  try {
    const PhysicalUnits u = units_from(cfg);
    const GridSpec g = grid_from(cfg);
    if (needs_pde) {
      const DensityProfile den;
      if (g.x_extent * 0.5 <= den.radius || g.y_extent * 0.5 <= den.radius)
        diags.push_back("error: grid does not cover the cloud");
      SignalSpec s;
      s.w_par = cfg.get_num("signal.w_par", s.w_par);
      s.w_perp = cfg.get_num("signal.w_perp", s.w_perp);
      if (6.5 * s.w_perp > 0.5 * g.y_extent)
        diags.push_back("warning: signal transverse tail clipped by the grid");
      const double bw = signal_bandwidth(u.c_tilde(), s.w_par);
      std::ostringstream os;
      os.imbue(std::locale::classic());
      os << "info: dt = dx/c = " << g.dx() / u.c_tilde() << ", signal bandwidth " << bw
         << " gamma";
      diags.push_back(os.str());
      if (bw > 20.0)
        diags.push_back("warning: signal bandwidth above 20 gamma reduces the reachable "
                        "efficiency at fixed depth");
      if (cfg.get_num("control.amplitude", 0.0) < 0.0)
        diags.push_back("error: control.amplitude must be >= 0");
      if ((scenario == "absorb" || scenario == "full" || scenario == "sweep-phi" ||
           scenario == "mismatch-abs" || scenario == "mismatch-em" || scenario == "optimize") &&
          !cfg.has("sim.d"))
        diags.push_back("error: sim.d is required for this scenario");
    }
  } catch (const std::exception& e) {
    diags.push_back(std::string("error: ") + e.what());
  }
  return diags;
}

void run_scenario(const CliArgs& args) {
  Config cfg = load_config(args.config_path);

  const std::string scenario =
      args.scenario == "run" ? cfg.get_str("scenario") : args.scenario;
  if (scenario == "validate") {
    for (const auto& d : validate(cfg)) std::cout << d << '\n';
    return;
  }
  if (!known_scenarios.count(scenario))
    throw ConfigError("unknown scenario " + scenario);

  const long seed_long = args.seed >= 0 ? args.seed : cfg.get_int("seed", 1);
  const unsigned seed = static_cast<unsigned>(seed_long);
  const std::string out = !args.out_dir.empty() ? args.out_dir : cfg.get_str("out", "out");

  Config effective = cfg;
  effective.set("scenario", scenario);
  effective.set("seed", std::to_string(seed_long));
  effective.kv.erase("out");

  std::vector<std::string> diags = validate(effective);
  for (const auto& d : diags) {
    if (d.rfind("error: ", 0) == 0) throw ConfigError(d);
    std::cerr << d << '\n';
  }

  std::filesystem::create_directories(out);
  write_manifest(out, effective, scenario);

  if (scenario == "absorb") run_absorb(effective, out, seed);
  else if (scenario == "full") run_full_scenario(effective, out, seed);
  else if (scenario == "sweep-abs") run_sweep_abs(effective, out, seed);
  else if (scenario == "sweep-phi") run_sweep_phi(effective, out, seed);
  else if (scenario == "mismatch-abs") run_mismatch_abs(effective, out, seed);
  else if (scenario == "mismatch-em") run_mismatch_em(effective, out, seed);
  else if (scenario == "optimize") run_optimize(effective, out, seed);
  else if (scenario == "feasibility") run_feasibility(effective, out, seed);
  else if (scenario == "coil") run_coil(effective, out, seed);
  else if (scenario == "adiabatic") run_adiabatic(effective, out, seed);
}

}
