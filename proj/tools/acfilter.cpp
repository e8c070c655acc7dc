#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acfilter/allen_cahn_2d.hpp"
#include "acfilter/classify.hpp"
#include "acfilter/dynamics.hpp"
#include "acfilter/experiments.hpp"
#include "acfilter/ground_state.hpp"
#include "acfilter/io.hpp"
#include "acfilter/plot.hpp"

using namespace acfilter;
namespace fs = std::filesystem;

namespace {

struct Globals {
  fs::path out = "out";
  bool fast = false;
  std::uint64_t seed = 12345;
};

struct RunFlags {
  double kappa = 0.9;
  double tau = 0.01;
  double t_max = 1e5;
  double tol = 1e-12;
  std::string scheme = "imex1";
  std::string filter = "odd";
  int record_every = 100;
  double perturb = -1.0;
  std::string parity = "even";
  std::vector<int> band = {0, 8};
  bool no_inject = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_kappa, const char* filters = "none | odd | gap:L") {
  if (with_kappa) cmd->add_option("--kappa", f.kappa, "interface parameter")->capture_default_str();
  cmd->add_option("--tau", f.tau, "time step")->capture_default_str();
  cmd->add_option("--tmax", f.t_max, "final time")->capture_default_str();
  cmd->add_option("--tol", f.tol, "stop when ||u^{n+1}-u^n||_inf / tau <= tol")->capture_default_str();
  cmd->add_option("--scheme", f.scheme, "imex1 | ieuler | bdf2x | strang")->capture_default_str();
  cmd->add_option("--filter", f.filter, filters)->capture_default_str();
  cmd->add_option("--record-every", f.record_every, "record diagnostics every n steps")
      ->capture_default_str();
  cmd->add_option("--perturb", f.perturb, "inject noise with H1 norm eps_star each step");
  cmd->add_option("--perturb-parity", f.parity, "odd | even | unconstrained")->capture_default_str();
  cmd->add_option("--perturb-band", f.band, "lowest,highest noisy mode")->delimiter(',')->expected(2);
  cmd->add_flag("--no-inject", f.no_inject, "disable noise injection even if --perturb is given");
}

RunConfig to_config(const RunFlags& f, const Globals& g) {
  RunConfig cfg;
  cfg.scheme = {parse_scheme(f.scheme), f.tau, f.kappa};
  cfg.filter = FilterSpec::parse(f.filter);
  cfg.t_max = f.t_max;
  cfg.tol = f.tol;
  cfg.record_every = f.record_every;
  if (f.perturb >= 0.0 && !f.no_inject) {
    PerturbationConfig p;
    p.eps_star = f.perturb;
    p.parity = parse_noise_parity(f.parity);
    p.band_lo = f.band.at(0);
    p.band_hi = f.band.at(1);
    p.seed = g.seed;
    cfg.perturbation = p;
  }
  cfg.validate();
  return cfg;
}

void echo_config(io::Meta& meta, const RunConfig& cfg) {
  meta.add("scheme", to_string(cfg.scheme.scheme))
      .add("kappa", cfg.scheme.kappa)
      .add("tau", cfg.scheme.tau)
      .add("filter", cfg.filter.to_string())
      .add("t_max", cfg.t_max)
      .add("tol", cfg.tol)
      .add("record_every", cfg.record_every);
  if (cfg.perturbation) {
    meta.add("perturb_eps_star", cfg.perturbation->eps_star)
        .add("perturb_parity", to_string(cfg.perturbation->parity))
        .add("perturb_band", std::to_string(cfg.perturbation->band_lo) + ".." +
                                 std::to_string(cfg.perturbation->band_hi))
        .add("seed", static_cast<long>(cfg.perturbation->seed));
  } else {
    meta.add("perturb", "none");
  }
}

std::string try_classify(const SpectralField1D& u, double kappa) {
  try {
    return classify_steady(u, kappa).to_string();
  } catch (const std::exception& e) {
    return std::string("unclassified (") + e.what() + ")";
  }
}

int cmd_ground_state(const Globals& g, double kappa, int modes) {
  const GroundState gs(kappa);
  const PeriodicGrid1D grid(modes);
  const auto u = gs.sample(grid);
  fs::create_directories(g.out);
  io::write_profile(g.out / "ground_state.csv", u);
  io::Meta meta;
  meta.add("kappa", kappa)
      .add("modes", modes)
      .add("n_peak", gs.n_peak())
      .add("gap_1_minus_n2", gs.gap())
      .add("energy0", gs.energy0())
      .add("m_kappa", m_kappa(kappa))
      .add("pde_residual", residual(u, kappa));
  meta.write(g.out / "meta.txt");
  plot::LinePlot p{"U_kappa, kappa=" + io::format_double(kappa), "x", "U", false, false, {}};
  p.series.push_back({"U", grid.nodes(), {u.values().begin(), u.values().end()}});
  plot::write_svg(g.out / "ground_state.svg", p);
  for (const auto& [k, v] : meta.entries()) std::cout << k << ": " << v << '\n';
  return 0;
}

int cmd_simulate(const Globals& g, const RunFlags& f, int modes, const std::string& init,
                 bool theorem) {
  auto cfg = to_config(f, g);
  cfg.theorem_checks = theorem;
  const PeriodicGrid1D grid(modes);
  const auto u0 = make_initial(grid, init);
  const auto rec = run(u0, cfg);
  const auto verdict = try_classify(*rec.final_state, f.kappa);

  fs::create_directories(g.out);
  io::write_series(g.out / "series.csv", rec);
  io::write_profile(g.out / "final.csv", *rec.final_state);
  io::Meta meta;
  echo_config(meta, cfg);
  meta.add("modes", modes).add("init", init);
  meta.add("stop_reason", to_string(rec.stop_reason))
      .add("final_time", rec.final_time)
      .add("steps", rec.steps)
      .add("max_abs_final", rec.final_state->max_abs())
      .add("energy_final", energy(*rec.final_state, f.kappa).total)
      .add("verdict", verdict);
  if (!rec.error_message.empty()) meta.add("error", rec.error_message);
  if (theorem) {
    const auto& th = rec.theorem;
    meta.add("theorem.inequality_checked", th.inequality_checked)
        .add("theorem.inequality_violations", th.inequality_violations)
        .add("theorem.worst_excess", th.worst_inequality_excess)
        .add("theorem.hypothesis_failures", th.hypothesis_failures)
        .add("theorem.sup_norm_u", th.sup_norm_u)
        .add("theorem.sup_norm_v", th.sup_norm_v)
        .add("theorem.min_energy_v", th.min_energy_v)
        .add("theorem.max_energy_v", th.max_energy_v)
        .add("theorem.energy_increases", th.energy_increases);
  }
  meta.write(g.out / "meta.txt");

  plot::LinePlot prof{"final state", "x", "u", false, false, {}};
  prof.series.push_back({"u0", grid.nodes(), {u0.values().begin(), u0.values().end()}});
  prof.series.push_back({"u_final", grid.nodes(),
                         {rec.final_state->values().begin(), rec.final_state->values().end()}});
  plot::write_svg(g.out / "final.svg", prof);
  plot::LinePlot en{"energy", "t", "E", false, false, {}};
  en.series.push_back({"E", rec.times, rec.energies});
  plot::write_svg(g.out / "energy.svg", en);

  std::cout << "stop_reason: " << to_string(rec.stop_reason) << "\nfinal_time: " << rec.final_time
            << "\nmax_abs_final: " << io::format_double(rec.final_state->max_abs())
            << "\nverdict: " << verdict << "\n";
  return rec.stop_reason == StopReason::scheme_error ? 1 : 0;
}

int cmd_simulate2d(const Globals& g, const RunFlags& f, const std::vector<int>& modes,
                   const std::vector<double>& snapshots) {
  if (modes.size() != 2) throw std::invalid_argument("--modes expects NX,NY");
  if (f.filter != "sym2d" && f.filter != "none") {
    throw std::invalid_argument("simulate2d --filter must be sym2d or none");
  }
  RunConfig2D cfg;
  cfg.scheme = {Scheme::imex1, f.tau, f.kappa};
  cfg.sym_filter = f.filter == "sym2d";
  cfg.t_max = f.t_max;
  cfg.tol = f.tol;
  cfg.record_every = f.record_every;
  cfg.snapshot_times = snapshots;
  if (f.perturb >= 0.0 && !f.no_inject) {
    PerturbationConfig p;
    p.eps_star = f.perturb;
    p.parity = parse_noise_parity(f.parity);
    p.band_lo = f.band.at(0);
    p.band_hi = f.band.at(1);
    p.seed = g.seed;
    cfg.perturbation = p;
  }
  const PeriodicGrid2D grid(modes[0], modes[1]);
  const auto u0 =
      SpectralField2D::sample(grid, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const auto rec = run_2d(u0, cfg);

  fs::create_directories(g.out);
  io::write_series_2d(g.out / "series.csv", rec);
  io::write_grid_csv(g.out / "final.csv", *rec.final_state);
  plot::write_heatmap_svg(g.out / "final.svg", *rec.final_state, "final state");
  for (const auto& [t, snap] : rec.snapshots) {
    io::write_pgm(g.out / ("snapshot_t" + io::format_double(t) + ".pgm"), snap);
  }
  io::Meta meta;
  meta.add("kappa", f.kappa)
      .add("tau", f.tau)
      .add("modes", std::to_string(modes[0]) + "x" + std::to_string(modes[1]))
      .add("filter", f.filter)
      .add("t_max", f.t_max)
      .add("tol", f.tol)
      .add("perturb", cfg.perturbation ? io::format_double(cfg.perturbation->eps_star) : "none")
      .add("stop_reason", to_string(rec.stop_reason))
      .add("final_time", rec.final_time)
      .add("energy_final", rec.energies.back())
      .add("x_defect_final", rec.x_defects.back())
      .add("y_defect_final", rec.y_defects.back());
  meta.write(g.out / "meta.txt");
  for (const auto& [k, v] : meta.entries()) std::cout << k << ": " << v << '\n';
  return 0;
}

int cmd_sweep(const Globals& g, const RunFlags& f, int modes, const std::string& init,
              std::vector<double> kappas) {
  if (kappas.empty()) {
    for (int i = 2; i <= 19; ++i) kappas.push_back(0.05 * i);
  }
  const auto cfg = to_config(f, g);
  const PeriodicGrid1D grid(modes);
  const auto rows = sweep_kappa(kappas, cfg, make_initial(grid, init));
  fs::create_directories(g.out);
  io::write_sweep(g.out / "sweep.csv", rows);
  std::vector<double> ks, ms;
  for (const auto& r : rows) {
    ks.push_back(r.kappa);
    ms.push_back(r.max_abs_final);
    std::cout << io::format_double(r.kappa) << "  " << io::format_double(r.max_abs_final) << "  "
              << r.verdict << (r.error.empty() ? "" : "  [" + r.error + "]") << '\n';
  }
  plot::LinePlot p{"max|u_final| vs kappa", "kappa", "max|u|", false, false, {}};
  p.series.push_back({"max|u_final|", ks, ms, true});
  plot::write_svg(g.out / "sweep.svg", p);
  io::Meta meta;
  echo_config(meta, cfg);
  meta.add("modes", modes).add("init", init);
  meta.write(g.out / "meta.txt");
  return 0;
}

int cmd_classify(const fs::path& input, double kappa) {
  const auto u = io::read_profile(input);
  try {
    const auto c = classify_steady(u, kappa);
    std::cout << c.to_string() << "\nmatch_error: " << io::format_double(c.match_error) << '\n';
    return 0;
  } catch (const ClassificationError& e) {
    std::cout << "unclassified\n" << e.what() << '\n';
    return 1;
  }
}

int cmd_experiment(const Globals& g, const std::string& name) {
  const auto result = run_experiment(name, {g.out, g.fast, g.seed});
  for (const auto& c : result.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  std::cout << name << ": " << (result.ok() ? "ok" : "FAILED") << " (" << result.dir.string()
            << ")\n";
  return result.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Allen-Cahn solver with symmetry-preserving filters"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_flag("--fast", g.fast, "reduced resolution and horizons for quick runs");
  app.add_option("--seed", g.seed, "noise seed")->capture_default_str();

  double gs_kappa = 0.9;
  int gs_modes = 256;
  auto* gs = app.add_subcommand("ground-state", "odd zero-up ground state U_kappa");
  gs->add_option("--kappa", gs_kappa)->required();
  gs->add_option("--modes", gs_modes)->capture_default_str();

  RunFlags sim_flags;
  int sim_modes = 256;
  std::string sim_init = "sin";
  bool theorem = false;
  auto* sim = app.add_subcommand("simulate", "1D run");
  add_run_flags(sim, sim_flags, true);
  sim->add_option("--modes", sim_modes)->capture_default_str();
  sim->add_option("--init", sim_init, "sin | sin:L | sin:L:A | mix:k1,k2,...")->capture_default_str();
  sim->add_flag("--theorem-checks", theorem, "record the per-step energy inequality diagnostics");

  RunFlags sim2_flags;
  sim2_flags.kappa = 0.1;
  sim2_flags.filter = "sym2d";
  sim2_flags.t_max = 1e4;
  std::vector<int> sim2_modes = {256, 256};
  std::vector<double> snapshots;
  auto* sim2 = app.add_subcommand("simulate2d", "2D run from sin(x)sin(y)");
  add_run_flags(sim2, sim2_flags, true, "sym2d | none");
  sim2->add_option("--modes", sim2_modes, "NX,NY")->delimiter(',')->expected(2);
  sim2->add_option("--snapshots", snapshots, "times for PGM snapshots")->delimiter(',');

  RunFlags sweep_flags;
  int sweep_modes = 256;
  std::string sweep_init = "sin";
  std::vector<double> kappas;
  auto* sweep = app.add_subcommand("sweep", "independent runs over kappa");
  add_run_flags(sweep, sweep_flags, false);
  sweep->add_option("--kappas", kappas, "comma-separated kappa list")->delimiter(',');
  sweep->add_option("--modes", sweep_modes)->capture_default_str();
  sweep->add_option("--init", sweep_init)->capture_default_str();

  fs::path cls_input;
  double cls_kappa = 0.9;
  auto* cls = app.add_subcommand("classify", "classify a steady profile (x,u CSV)");
  cls->add_option("--input", cls_input)->required()->check(CLI::ExistingFile);
  cls->add_option("--kappa", cls_kappa)->required();

  std::string exp_name;
  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  exp->add_option("name", exp_name)->required();

  auto* list = app.add_subcommand("list-experiments", "list named experiments");

  for (auto* sub : {gs, sim, sim2, sweep, cls, exp, list}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help and version exit 0; bad usage is an input error
  }
  if (sweep_flags.filter.empty()) sweep_flags.filter = "odd";

  try {
    if (*gs) return cmd_ground_state(g, gs_kappa, gs_modes);
    if (*sim) return cmd_simulate(g, sim_flags, sim_modes, sim_init, theorem);
    if (*sim2) return cmd_simulate2d(g, sim2_flags, sim2_modes, snapshots);
    if (*sweep) return cmd_sweep(g, sweep_flags, sweep_modes, sweep_init, kappas);
    if (*cls) return cmd_classify(cls_input, cls_kappa);
    if (*exp) return cmd_experiment(g, exp_name);
    if (*list) {
      for (const auto& e : experiment_registry()) std::cout << e.name << "  " << e.summary << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
