#include "acfilter/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "acfilter/allen_cahn_2d.hpp"
#include "acfilter/classify.hpp"
#include "acfilter/dynamics.hpp"
#include "acfilter/ground_state.hpp"
#include "acfilter/io.hpp"
#include "acfilter/plot.hpp"

namespace acfilter {

bool ExperimentResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

struct Context {
  fs::path dir;
  bool fast = false;
  std::uint64_t seed = 12345;
  io::Meta meta;
  std::vector<ExperimentCheck> checks;

  void check(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  // measured <= limit
  void at_most(std::string name, double measured, double limit) {
    check(std::move(name), measured <= limit, "measured " + num(measured) + ", expected <= " + num(limit));
  }
  void at_least(std::string name, double measured, double limit) {
    check(std::move(name), measured >= limit, "measured " + num(measured) + ", expected >= " + num(limit));
  }
  PerturbationConfig noise(NoiseParity parity, double eps_star) const {
    PerturbationConfig p;
    p.eps_star = eps_star;
    p.parity = parity;
    p.band_lo = parity == NoiseParity::odd ? 1 : 0;
    p.seed = seed;
    return p;
  }
};

std::string verdict_of(const SpectralField1D& u, double kappa) {
  try {
    return classify_steady(u, kappa).to_string();
  } catch (const std::exception& e) {
    return std::string("unclassified: ") + e.what();
  }
}

void echo_run(io::Meta& meta, const std::string& prefix, const RunConfig& cfg, int modes,
              std::string_view init) {
  meta.add(prefix + "scheme", to_string(cfg.scheme.scheme))
      .add(prefix + "tau", cfg.scheme.tau)
      .add(prefix + "kappa", cfg.scheme.kappa)
      .add(prefix + "modes", modes)
      .add(prefix + "init", std::string(init))
      .add(prefix + "filter", cfg.filter.to_string())
      .add(prefix + "t_max", cfg.t_max)
      .add(prefix + "tol", cfg.tol);
  if (cfg.perturbation) {
    meta.add(prefix + "perturb_eps_star", cfg.perturbation->eps_star)
        .add(prefix + "perturb_parity", to_string(cfg.perturbation->parity))
        .add(prefix + "perturb_band",
             std::to_string(cfg.perturbation->band_lo) + ".." + std::to_string(cfg.perturbation->band_hi))
        .add(prefix + "seed", static_cast<long>(cfg.perturbation->seed));
  } else {
    meta.add(prefix + "perturb", "none");
  }
}

void echo_result(io::Meta& meta, const std::string& prefix, const RunRecord& rec,
                 const std::string& verdict) {
  meta.add(prefix + "stop_reason", to_string(rec.stop_reason))
      .add(prefix + "final_time", rec.final_time)
      .add(prefix + "steps", rec.steps)
      .add(prefix + "max_abs_final", rec.final_state->max_abs())
      .add(prefix + "verdict", verdict);
}

plot::Series profile_series(std::string label, const SpectralField1D& u) {
  auto xs = u.grid().nodes();
  std::vector<double> ys(u.values().begin(), u.values().end());
  // close the period for drawing
  xs.push_back(kPi);
  ys.push_back(ys.front());
  return {std::move(label), std::move(xs), std::move(ys)};
}

plot::Series time_series(std::string label, const RunRecord& rec, const std::vector<double>& ys,
                         bool absolute = false) {
  std::vector<double> y = ys;
  if (absolute) for (auto& v : y) v = std::abs(v);
  return {std::move(label), rec.times, std::move(y)};
}

// --- experiments --------------------------------------------------------

RunConfig base_1d(double kappa, double tau = 0.01) {
  RunConfig cfg;
  cfg.scheme = {Scheme::imex1, tau, kappa};
  return cfg;
}

void single_run_outputs(Context& ctx, const RunRecord& rec, const SpectralField1D& u0,
                        const std::string& title, const SpectralField1D* reference) {
  io::write_series(ctx.dir / "series.csv", rec);
  io::write_profile(ctx.dir / "final.csv", *rec.final_state);
  plot::LinePlot prof{title + ": final state", "x", "u", false, false, {}};
  prof.series.push_back(profile_series("u0", u0));
  prof.series.push_back(profile_series("u_final", *rec.final_state));
  if (reference) prof.series.push_back(profile_series("ground state", *reference));
  plot::write_svg(ctx.dir / "profile.svg", prof);
  plot::LinePlot evo{title + ": |u(0,t)|", "t", "|u(0,t)|", false, true, {}};
  evo.series.push_back(time_series("|u(0,t)|", rec, rec.u_at_zero, true));
  plot::write_svg(ctx.dir / "u_at_zero.svg", evo);
  plot::LinePlot en{title + ": energy", "t", "E", false, false, {}};
  en.series.push_back(time_series("E(u)", rec, rec.energies));
  plot::write_svg(ctx.dir / "energy.svg", en);
}

void fig_wrong_steady(Context& ctx) {
  const double kappa = 0.9;
  const int modes = 256;
  const PeriodicGrid1D grid(modes);
  auto cfg = base_1d(kappa);
  cfg.perturbation = ctx.noise(NoiseParity::even, 1e-13);
  const auto u0 = make_initial(grid, "sin");
  echo_run(ctx.meta, "", cfg, modes, "sin");
  const auto rec = run(u0, cfg);
  const auto verdict = verdict_of(*rec.final_state, kappa);
  echo_result(ctx.meta, "", rec, verdict);
  const auto U = GroundState(kappa).sample(grid);
  single_run_outputs(ctx, rec, u0, "unfiltered IMEX, kappa=0.9", &U);
  ctx.check("verdict is +1 or -1", verdict == "plus_one" || verdict == "minus_one",
            "verdict " + verdict);
  ctx.at_least("max|u_final|", rec.final_state->max_abs(), 0.999);
}

void fig_filtered_steady(Context& ctx) {
  const double kappa = 0.9;
  const int modes = ctx.fast ? 128 : 256;
  const PeriodicGrid1D grid(modes);
  auto cfg = base_1d(kappa);
  cfg.filter = FilterSpec::odd();
  const auto u0 = make_initial(grid, "sin");
  echo_run(ctx.meta, "", cfg, modes, "sin");
  const auto rec = run(u0, cfg);
  const auto verdict = verdict_of(*rec.final_state, kappa);
  echo_result(ctx.meta, "", rec, verdict);
  const auto U = GroundState(kappa).sample(grid);
  single_run_outputs(ctx, rec, u0, "filtered IMEX, kappa=0.9", &U);
  ctx.at_most("||u_final - U_0.9||_inf", max_abs_difference(*rec.final_state, U),
              ctx.fast ? 1e-3 : 1e-5);
  ctx.check("stop_reason tol_reached", rec.stop_reason == StopReason::tol_reached,
            to_string(rec.stop_reason));
  ctx.check("verdict ground j=1", verdict.starts_with("ground(j=1,"), verdict);
}

void fig_umax_sweep(Context& ctx) {
  const int modes = ctx.fast ? 128 : 256;
  const PeriodicGrid1D grid(modes);
  std::vector<double> kappas;
  const double step = ctx.fast ? 0.1 : 0.05;
  for (double k = 0.1; k < 0.951; k += step) kappas.push_back(std::round(k * 1000) / 1000);
  if (kappas.back() < 0.95) kappas.push_back(0.95);
  kappas.push_back(1.001);
  const auto u0 = make_initial(grid, "sin");

  auto filtered = base_1d(0.5);
  filtered.filter = FilterSpec::odd();
  auto unfiltered = base_1d(0.5);
  unfiltered.perturbation = ctx.noise(NoiseParity::even, 1e-13);
  echo_run(ctx.meta, "filtered.", filtered, modes, "sin");
  echo_run(ctx.meta, "unfiltered.", unfiltered, modes, "sin");

  const auto rows_f = sweep_kappa(kappas, filtered, u0);
  const auto rows_u = sweep_kappa(kappas, unfiltered, u0);
  io::write_sweep(ctx.dir / "sweep_filtered.csv", rows_f);
  io::write_sweep(ctx.dir / "sweep_unfiltered.csv", rows_u);

  std::vector<double> ks, nk, mf, mu;
  double worst_oracle = 0.0;
  double worst_one = 0.0;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    const double k = kappas[i];
    ks.push_back(k);
    mf.push_back(rows_f[i].max_abs_final);
    mu.push_back(rows_u[i].max_abs_final);
    const double n = k < 1.0 ? solve_n_peak(k) : 0.0;
    nk.push_back(n);
    if (k < 1.0) worst_oracle = std::max(worst_oracle, std::abs(rows_f[i].max_abs_final - n));
    if (k >= 0.75 && k < 1.0) worst_one = std::max(worst_one, std::abs(rows_u[i].max_abs_final - 1.0));
  }
  io::write_csv(ctx.dir / "n_kappa_oracle.csv", {"kappa", "n_kappa"}, {ks, nk});
  plot::LinePlot p{"max|u_final| vs kappa", "kappa", "max|u|", false, false, {}};
  p.series.push_back({"filtered", ks, mf, true});
  p.series.push_back({"unfiltered + noise", ks, mu, true});
  p.series.push_back({"N_kappa oracle", ks, nk, false});
  plot::write_svg(ctx.dir / "umax_sweep.svg", p);

  ctx.at_most("filtered max|u| vs N_kappa (kappa<1)", worst_oracle, 1e-4);
  ctx.at_most("unfiltered max|u| - 1 for kappa >= 0.75", worst_one, 1e-4);
  ctx.at_most("filtered max|u| at kappa=1.001", rows_f.back().max_abs_final, 1e-6);
  for (const auto& r : rows_f) {
    if (!r.error.empty() && r.verdict == "error") ctx.check("row kappa=" + num(r.kappa), false, r.error);
  }
}

void fig_energy_curve(Context& ctx) {
  std::vector<double> ks;
  const int count = ctx.fast ? 20 : 99;
  for (int i = 1; i <= count; ++i) ks.push_back(std::round(0.99 * i / count * 1e4) / 1e4);
  if (ks.front() != 0.01) ks.insert(ks.begin(), 0.01);
  std::vector<double> es, ns, ok_k;
  for (double k : ks) {
    try {
      const GroundState gs(k);
      ok_k.push_back(k);
      es.push_back(gs.energy0());
      ns.push_back(gs.n_peak());
    } catch (const std::exception& e) {
      ctx.check("oracle at kappa=" + num(k), false, e.what());
    }
  }
  io::write_csv(ctx.dir / "energy_curve.csv", {"kappa", "n_kappa", "energy0"}, {ok_k, ns, es});

  const std::vector<double> profile_kappas = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<std::string> header = {"x"};
  std::vector<std::vector<double>> cols(1 + profile_kappas.size());
  plot::LinePlot prof{"ground states U_kappa", "x", "U", false, false, {}};
  for (int i = 0; i <= 512; ++i) cols[0].push_back(-kPi + 2.0 * kPi * i / 512);
  for (std::size_t j = 0; j < profile_kappas.size(); ++j) {
    const GroundState gs(profile_kappas[j]);
    header.push_back("U_" + num(profile_kappas[j]));
    for (double x : cols[0]) cols[j + 1].push_back(gs(x));
    prof.series.push_back({"kappa=" + num(profile_kappas[j]), cols[0], cols[j + 1]});
  }
  std::vector<std::span<const double>> spans(cols.begin(), cols.end());
  io::write_csv(ctx.dir / "profiles.csv", header, spans);
  plot::write_svg(ctx.dir / "profiles.svg", prof);
  plot::LinePlot curve{"E0(kappa)", "kappa", "E0", false, false, {}};
  curve.series.push_back({"E0", ok_k, es});
  curve.series.push_back({"pi/2", {0.0, 1.0}, {kPi / 2, kPi / 2}});
  plot::write_svg(ctx.dir / "energy_curve.svg", curve);

  bool increasing = true;
  for (std::size_t i = 1; i < es.size(); ++i) increasing = increasing && es[i] > es[i - 1];
  ctx.check("E0 strictly increasing", increasing, std::to_string(es.size()) + " kappa values");
  const double slope = GroundState(0.01).energy0() / 0.01;
  const double target = 4.0 * std::sqrt(2.0) / 3.0;
  ctx.at_most("|E0(0.01)/0.01 / (4 sqrt2/3) - 1|", std::abs(slope / target - 1.0), 0.01);
  ctx.at_most("max E0 - pi/2", *std::max_element(es.begin(), es.end()) - kPi / 2, -1e-15);
  ctx.meta.add("slope_at_0.01", slope).add("slope_target", target);
}

double aligned_distance(const SpectralField1D& a, const SpectralField1D& b) {
  // odd states: the only symmetry-compatible alignments are b and -b
  const auto neg = combine(-1.0, b, 0.0, b);
  return std::min(max_abs_difference(a, b), max_abs_difference(a, neg));
}

void ex1_initials(Context& ctx) {
  const double kappa = 0.1;
  const int modes = ctx.fast ? 128 : 256;
  const double tau = ctx.fast ? 0.05 : 0.01;
  const PeriodicGrid1D grid(modes);
  const std::vector<std::string> inits = {"sin", "mix:1,2", "mix:1,4", "mix:1,8"};
  auto cfg = base_1d(kappa, tau);
  cfg.filter = FilterSpec::odd();
  echo_run(ctx.meta, "", cfg, modes, "see run.* entries");
  std::vector<SpectralField1D> finals;
  plot::LinePlot prof{"kappa=0.1 steady states", "x", "u", false, false, {}};
  for (std::size_t i = 0; i < inits.size(); ++i) {
    const auto u0 = make_initial(grid, inits[i]);
    const auto rec = run(u0, cfg);
    const std::string tag = "run" + std::to_string(i + 1);
    const auto verdict = verdict_of(*rec.final_state, kappa);
    ctx.meta.add(tag + ".init", inits[i]);
    echo_result(ctx.meta, tag + ".", rec, verdict);
    io::write_series(ctx.dir / (tag + "_series.csv"), rec);
    io::write_profile(ctx.dir / (tag + "_final.csv"), *rec.final_state);
    prof.series.push_back(profile_series(inits[i], *rec.final_state));
    ctx.check(tag + " (" + inits[i] + ") verdict ground j=1", verdict.starts_with("ground(j=1,"),
              verdict);
    finals.push_back(*rec.final_state);
  }
  plot::write_svg(ctx.dir / "finals.svg", prof);
  double worst = 0.0;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    for (std::size_t j = i + 1; j < finals.size(); ++j) {
      worst = std::max(worst, aligned_distance(finals[i], finals[j]));
    }
  }
  ctx.at_most("pairwise aligned ||.||_inf", worst, 1e-4);
}

void ex2_threshold(Context& ctx) {
  const int modes = ctx.fast ? 64 : 256;
  const PeriodicGrid1D grid(modes);
  const auto u0 = make_initial(grid, "sin");
  plot::LinePlot prof{"kappa near 1", "x", "u", false, false, {}};
  plot::LinePlot decay{"max|u| vs t", "t", "max|u|", false, true, {}};
  for (double kappa : {0.999, 1.001}) {
    auto cfg = base_1d(kappa);
    cfg.filter = FilterSpec::odd();
    const std::string tag = kappa < 1.0 ? "k0999" : "k1001";
    echo_run(ctx.meta, tag + ".", cfg, modes, "sin");
    const auto rec = run(u0, cfg);
    const auto verdict = verdict_of(*rec.final_state, kappa);
    echo_result(ctx.meta, tag + ".", rec, verdict);
    io::write_series(ctx.dir / (tag + "_series.csv"), rec);
    io::write_profile(ctx.dir / (tag + "_final.csv"), *rec.final_state);
    prof.series.push_back(profile_series("kappa=" + num(kappa), *rec.final_state));
    decay.series.push_back(time_series("kappa=" + num(kappa), rec, rec.max_abs));
    if (kappa < 1.0) {
      ctx.at_least("kappa=0.999 max|u_final|", rec.final_state->max_abs(), 0.01);
    } else {
      ctx.at_most("kappa=1.001 max|u_final|", rec.final_state->max_abs(), 1e-6);
    }
  }
  plot::write_svg(ctx.dir / "finals.svg", prof);
  plot::write_svg(ctx.dir / "max_abs.svg", decay);
}

void ex3_metastable(Context& ctx) {
  const double kappa = std::sqrt(0.001);
  const int modes = 256;
  const PeriodicGrid1D grid(modes);
  auto cfg = base_1d(kappa);
  cfg.filter = FilterSpec::odd();
  if (ctx.fast) cfg.t_max = 5000;
  echo_run(ctx.meta, "", cfg, modes, "see run.* entries");
  const GroundState gs(kappa);
  const auto U = gs.sample(grid);
  const int ground_changes = count_sign_changes(U, 1e-8);
  ctx.meta.add("energy0", gs.energy0()).add("ground_sign_changes", ground_changes);
  plot::LinePlot prof{"metastable states, kappa=sqrt(0.001)", "x", "u", false, false, {}};
  int idx = 0;
  for (const char* init : {"mix:1,2", "mix:1,8"}) {
    const std::string tag = "run" + std::to_string(++idx);
    const auto rec = run(make_initial(grid, init), cfg);
    const auto& f = *rec.final_state;
    const auto verdict = verdict_of(f, kappa);
    const double e = energy(f, kappa).total;
    const int changes = count_sign_changes(f, 1e-8);
    ctx.meta.add(tag + ".init", std::string(init));
    echo_result(ctx.meta, tag + ".", rec, verdict);
    ctx.meta.add(tag + ".energy_final", e).add(tag + ".sign_changes", changes);
    io::write_series(ctx.dir / (tag + "_series.csv"), rec);
    io::write_profile(ctx.dir / (tag + "_final.csv"), f);
    prof.series.push_back(profile_series(init, f));
    ctx.check(tag + " energy > E0", e > gs.energy0(),
              "E=" + num(e) + ", E0=" + num(gs.energy0()));
    ctx.at_least(tag + " sign changes", changes, ground_changes + 2);
    ctx.check(tag + " not the j=1 ground state", !verdict.starts_with("ground(j=1,"), verdict);
    if (rec.stop_reason == StopReason::tol_reached) {
      ctx.at_most(tag + " step residual at stop", rec.residuals.back(), cfg.tol);
    }
  }
  prof.series.push_back(profile_series("U_kappa", U));
  plot::write_svg(ctx.dir / "finals.svg", prof);
}

void ex4_2d(Context& ctx) {
  const int n = ctx.fast ? 64 : 256;
  const PeriodicGrid2D grid(n, n);
  const auto u0 = SpectralField2D::sample(grid, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const double filtered_limit = ctx.fast ? 1e-11 : 1e-12;
  const double watch = ctx.fast ? 0.05 : 0.1;
  ctx.meta.add("kappa", 0.1).add("tau", 0.01).add("modes", std::to_string(n) + "x" + std::to_string(n));

  RunConfig2D filtered;
  filtered.sym_filter = true;
  filtered.snapshot_times = {0.0, 5.0, 10.0, 20.0};
  RunConfig2D unfiltered;
  unfiltered.sym_filter = false;
  unfiltered.perturbation = ctx.noise(NoiseParity::even, 1e-13);
  unfiltered.snapshot_times = {0.0, 50.0, 100.0, 200.0};
  unfiltered.stop_after_crossing = ctx.fast ? 100.0 : 200.0;
  ctx.meta.add("t_max", filtered.t_max).add("unfiltered.stop_after_crossing", unfiltered.stop_after_crossing);

  const auto rf = run_2d(u0, filtered, watch);
  const auto ru = run_2d(u0, unfiltered, watch);
  plot::LinePlot defects{"symmetry defects", "t", "defect", false, true, {}};
  plot::LinePlot energies{"2D energy", "t", "E", false, false, {}};
  for (const auto& [tag, rec] : {std::pair<std::string, const RunRecord2D*>{"filtered", &rf},
                                 {"unfiltered", &ru}}) {
    io::write_series_2d(ctx.dir / (tag + "_series.csv"), *rec);
    io::write_grid_csv(ctx.dir / (tag + "_final.csv"), *rec->final_state);
    plot::write_heatmap_svg(ctx.dir / (tag + "_final.svg"), *rec->final_state, tag + " final state");
    for (const auto& [t, snap] : rec->snapshots) {
      std::ostringstream name;
      name << tag << "_t" << static_cast<long>(std::lround(t)) << ".pgm";
      io::write_pgm(ctx.dir / name.str(), snap);
    }
    std::vector<double> d(rec->size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(rec->x_defects[i], rec->y_defects[i]);
    defects.series.push_back({tag, rec->times, d});
    energies.series.push_back({tag, rec->times, rec->energies});
    ctx.meta.add(tag + ".stop_reason", to_string(rec->stop_reason))
        .add(tag + ".final_time", rec->final_time)
        .add(tag + ".energy_final", rec->energies.back());
  }
  plot::write_svg(ctx.dir / "defects.svg", defects);
  plot::write_svg(ctx.dir / "energy.svg", energies);

  double worst = 0.0;
  for (std::size_t i = 0; i < rf.size(); ++i) worst = std::max({worst, rf.x_defects[i], rf.y_defects[i]});
  ctx.at_most("filtered symmetry defect, all recorded times", worst, filtered_limit);
  const double crossing = ru.first_defect_crossing.value_or(std::numeric_limits<double>::infinity());
  ctx.check("unfiltered defect exceeds " + num(watch) + " before t=1e4", crossing < 1e4,
            "first crossing at t=" + num(crossing));
  ctx.check("final energies differ (unfiltered lower)", ru.energies.back() < rf.energies.back(),
            "unfiltered " + num(ru.energies.back()) + ", filtered " + num(rf.energies.back()));
}

void amplification(Context& ctx) {
  const auto trace = amplification_demo(1e-15, 35.0, 3500);
  io::write_csv(ctx.dir / "euler_trace.csv", {"t", "euler"}, {trace.times, trace.euler});
  std::vector<double> exact(trace.times.size());
  for (std::size_t i = 0; i < exact.size(); ++i) exact[i] = 1e-15 * std::exp(trace.times[i]);
  plot::LinePlot p{"u' = u from u0 = 1e-15", "t", "u", false, true, {}};
  p.series.push_back({"exact", trace.times, exact});
  p.series.push_back({"forward Euler, dt=0.01", trace.times, trace.euler});
  plot::write_svg(ctx.dir / "amplification.svg", p);
  ctx.meta.add("u0", 1e-15).add("t_end", 35.0).add("exact", trace.exact).add("euler", trace.euler.back());
  ctx.at_most("|u(35)/1.5860 - 1|", std::abs(trace.exact / 1.5860 - 1.0), 1e-3);
  ctx.at_most("u0=0 stays 0", std::abs(amplification_demo(0.0, 35.0).exact), 0.0);
  ctx.at_most("u0=1, t=1 gives e", std::abs(amplification_demo(1.0, 1.0).exact - std::exp(1.0)), 1e-15);
}

void scheme_comparison(Context& ctx) {
  const int modes = 128;
  const PeriodicGrid1D grid(modes);
  const auto u0 = make_initial(grid, "sin");
  plot::LinePlot p{"parity defect, kappa=1, no filter", "t", "max|u(x)+u(-x)|", false, true, {}};
  for (Scheme s : {Scheme::imex1, Scheme::implicit_euler, Scheme::bdf2x, Scheme::strang}) {
    RunConfig cfg;
    cfg.scheme = {s, 0.01, 1.0};
    cfg.perturbation = ctx.noise(NoiseParity::even, 1e-13);
    cfg.t_max = ctx.fast ? 200 : 1000;
    cfg.record_every = 10;
    const std::string tag = to_string(s);
    echo_run(ctx.meta, tag + ".", cfg, modes, "sin");
    const auto rec = run(u0, cfg);
    echo_result(ctx.meta, tag + ".", rec, verdict_of(*rec.final_state, 1.0));
    io::write_series(ctx.dir / (tag + "_series.csv"), rec);
    p.series.push_back(time_series(tag, rec, rec.parity_defects));
    const double first = rec.parity_defects.front();
    const double last = rec.parity_defects.back();
    ctx.check(tag + " parity defect grows", last > 1e6 * first && last > 0.1,
              "defect " + num(first) + " -> " + num(last));
  }
  plot::write_svg(ctx.dir / "parity_defect.svg", p);
}

struct Entry {
  ExperimentInfo info;
  std::function<void(Context&)> fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {{"fig_wrong_steady", "unfiltered IMEX, kappa=0.9, even noise 1e-13: ends at +-1"}, fig_wrong_steady},
      {{"fig_filtered_steady", "filtered IMEX, kappa=0.9: converges to U_0.9"}, fig_filtered_steady},
      {{"fig_umax_sweep", "max|u_final| vs kappa, with and without filter"}, fig_umax_sweep},
      {{"fig_energy_curve", "ground-state energy E0(kappa) and profiles"}, fig_energy_curve},
      {{"ex1_initials", "kappa=0.1, four odd initial data reach the same state"}, ex1_initials},
      {{"ex2_threshold", "kappa=0.999 vs 1.001: nonzero vs zero steady state"}, ex2_threshold},
      {{"ex3_metastable", "kappa=sqrt(0.001): filtered runs stop at metastable states"}, ex3_metastable},
      {{"ex4_2d", "2D sin(x)sin(y), kappa=0.1, with and without the symmetry filter"}, ex4_2d},
      {{"amplification_demo", "u' = u from 1e-15 reaches order one by t=35"}, amplification},
      {{"scheme_comparison", "four schemes without filter, kappa=1: parity defect growth"}, scheme_comparison},
  };
  return list;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

ExperimentResult run_experiment(std::string_view name, const ExperimentOptions& opts) {
  const auto& list = entries();
  const auto it = std::find_if(list.begin(), list.end(), [name](const Entry& e) { return e.info.name == name; });
  if (it == list.end()) {
    throw std::invalid_argument("unknown experiment '" + std::string(name) +
                                "' (see list-experiments)");
  }
  Context ctx;
  ctx.dir = opts.out / it->info.name;
  ctx.fast = opts.fast;
  ctx.seed = opts.seed;
  fs::create_directories(ctx.dir);
  ctx.meta.add("experiment", it->info.name).add("fast", opts.fast).add("seed", static_cast<long>(opts.seed));
  it->fn(ctx);

  ExperimentResult result{it->info.name, ctx.dir, std::move(ctx.checks)};
  ctx.meta.add("result", result.ok() ? "pass" : "fail");
  ctx.meta.write(ctx.dir / "meta.txt");
  std::ofstream checks(ctx.dir / "checks.txt");
  for (const auto& c : result.checks) {
    checks << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  return result;
}

}  // namespace acfilter
