#include "acfilter/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "acfilter/kernels.hpp"

namespace acfilter {

NoiseParity parse_noise_parity(std::string_view name) {
  if (name == "odd") return NoiseParity::odd;
  if (name == "even") return NoiseParity::even;
  if (name == "unconstrained" || name == "any") return NoiseParity::unconstrained;
  throw std::invalid_argument("unknown noise parity '" + std::string(name) + "'");
}

std::string to_string(NoiseParity p) {
  switch (p) {
    case NoiseParity::odd: return "odd";
    case NoiseParity::even: return "even";
    case NoiseParity::unconstrained: return "unconstrained";
  }
  return "even";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::tol_reached: return "tol_reached";
    case StopReason::t_max_reached: return "t_max_reached";
    case StopReason::scheme_error: return "scheme_error";
  }
  return "t_max_reached";
}

void PerturbationConfig::validate() const {
  if (!(eps_star >= 0.0)) throw std::invalid_argument("eps_star must be >= 0");
  if (band_lo < 0 || band_hi < band_lo) throw std::invalid_argument("bad noise mode band");
}

void RunConfig::validate() const {
  scheme.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  if (filter.kind == FilterSpec::Kind::sym_2d) {
    throw std::invalid_argument("sym2d filter applies to 2D runs only");
  }
  if (perturbation) perturbation->validate();
}

namespace {

// 2 pi sum over the full spectrum of weight(k) |c_k|^2, from a half spectrum.
template <typename W>
double spectral_sum(std::span<const Complex> half, W weight) {
  const int top = static_cast<int>(half.size()) - 1;
  double s = weight(0) * std::norm(half[0]);
  for (int k = 1; k < top; ++k) s += 2.0 * weight(k) * std::norm(half[k]);
  s += weight(-1) * std::norm(half[top]);  // Nyquist: caller decides via k = -1
  return 2.0 * kPi * s;
}

}  // namespace

NoiseSource::NoiseSource(const PeriodicGrid1D& grid, const PerturbationConfig& cfg)
    : grid_(grid), cfg_(cfg), rng_(cfg.seed) {
  cfg.validate();
}

std::vector<Complex> NoiseSource::next() {
  const int n = grid_.size();
  std::vector<Complex> half(n / 2 + 1, Complex{});
  const int hi = std::min(cfg_.band_hi, n / 2 - 1);
  for (int k = cfg_.band_lo; k <= hi; ++k) {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    half[k] = Complex(re, k == 0 ? 0.0 : im);
  }
  switch (cfg_.parity) {
    case NoiseParity::odd: project_odd(half); break;
    case NoiseParity::even:
      for (auto& c : half) c = Complex(c.real(), 0.0);
      break;
    case NoiseParity::unconstrained: break;
  }
  const double h1 = std::sqrt(spectral_sum(half, [](int k) {
    return k < 0 ? 1.0 : 1.0 + static_cast<double>(k) * k;
  }));
  const double scale = h1 > 0.0 ? cfg_.eps_star / h1 : 0.0;
  for (auto& c : half) c *= scale;
  return half;
}

namespace {

struct Recorder {
  RunRecord& rec;
  double kappa;

  void operator()(double t, const SpectralField1D& v, double step_residual) {
    rec.times.push_back(t);
    rec.energies.push_back(energy(v, kappa).total);
    rec.residuals.push_back(step_residual);
    rec.max_abs.push_back(v.max_abs());
    rec.u_at_zero.push_back(v.value(v.grid().origin()));
    rec.pde_residuals.push_back(residual(v, kappa));
    rec.parity_defects.push_back(parity_defect(v));
  }
};

void project(const FilterSpec& filter, std::span<Complex> half) {
  switch (filter.kind) {
    case FilterSpec::Kind::none: break;
    case FilterSpec::Kind::odd_1d: project_odd(half); break;
    case FilterSpec::Kind::gap: project_gap(half, filter.gap); break;
    case FilterSpec::Kind::sym_2d: throw std::invalid_argument("sym2d filter in a 1D run");
  }
}

}  // namespace

RunRecord run(const SpectralField1D& u0, const RunConfig& cfg) {
  cfg.validate();
  const auto& grid = u0.grid();
  const double tau = cfg.scheme.tau;
  const double kappa = cfg.scheme.kappa;
  const bool filtered = cfg.filter.kind != FilterSpec::Kind::none;

  RunRecord rec;
  Recorder record{rec, kappa};
  Stepper stepper(grid, cfg.scheme);
  std::optional<NoiseSource> noise;
  if (cfg.perturbation) noise.emplace(grid, *cfg.perturbation);

  // v = filter(w + eps)
  auto finish = [&](const SpectralField1D& w) {
    if (!noise && !filtered) return w;
    std::vector<Complex> half(w.half_coeffs().begin(), w.half_coeffs().end());
    if (noise) kernels::add(half, noise->next(), half);
    project(cfg.filter, half);
    return SpectralField1D::from_coeffs(grid, std::move(half));
  };

  SpectralField1D v = finish(u0);
  record(0.0, v, std::numeric_limits<double>::quiet_NaN());

  auto& th = rec.theorem;
  double energy_v = cfg.theorem_checks ? energy(v, kappa).total : 0.0;
  if (cfg.theorem_checks) th.sup_norm_v = v.max_abs();
  const double energy_cap = kPi / 2.0 - 0.001;

  const long n_max = static_cast<long>(std::ceil(cfg.t_max / tau - 1e-9));
  rec.stop_reason = StopReason::t_max_reached;
  for (long n = 0; n < n_max; ++n) {
    std::optional<SpectralField1D> w;
    try {
      w = stepper.step(v);
    } catch (const SchemeError& e) {
      rec.stop_reason = StopReason::scheme_error;
      rec.error_message = e.what();
      if (rec.times.back() != n * tau) record(n * tau, v, std::numeric_limits<double>::quiet_NaN());
      break;
    }
    const double step_residual = max_abs_difference(*w, v) / tau;

    if (cfg.theorem_checks) {
      ++th.steps;
      const double w_sup = w->max_abs();
      th.sup_norm_u = std::max(th.sup_norm_u, w_sup);
      const double energy_w = energy(*w, kappa).total;
      if (energy_v <= energy_cap && std::max(w_sup, v.max_abs()) <= 1.1) {
        std::vector<Complex> diff(w->half_coeffs().size());
        for (std::size_t k = 0; k < diff.size(); ++k) {
          diff[k] = w->half_coeffs()[k] - v.half_coeffs()[k];
        }
        const double l2sq = spectral_sum(diff, [](int) { return 1.0; });
        const double dxsq = spectral_sum(diff, [](int k) {
          return k < 0 ? 0.0 : static_cast<double>(k) * k;
        });
        const double excess =
            energy_w + l2sq / (5.0 * tau) + 0.5 * kappa * kappa * dxsq - energy_v;
        ++th.inequality_checked;
        th.worst_inequality_excess = std::max(th.worst_inequality_excess, excess);
        if (excess > cfg.energy_slack) ++th.inequality_violations;
      } else {
        ++th.hypothesis_failures;
      }
    }

    SpectralField1D next = finish(*w);
    if (cfg.theorem_checks) {
      const double energy_next = energy(next, kappa).total;
      th.sup_norm_v = std::max(th.sup_norm_v, next.max_abs());
      th.min_energy_v = std::min(th.min_energy_v, energy_next);
      th.max_energy_v = std::max(th.max_energy_v, energy_next);
      if (energy_next > energy_v + cfg.energy_slack) ++th.energy_increases;
      energy_v = energy_next;
    }
    v = std::move(next);
    rec.steps = n + 1;

    const double t = (n + 1) * tau;
    bool stop = false;
    if (step_residual <= cfg.tol) {
      rec.stop_reason = StopReason::tol_reached;
      stop = true;
    } else if (n + 1 == n_max) {
      stop = true;
    }
    if (stop || (n + 1) % cfg.record_every == 0) record(t, v, step_residual);
    if (stop) break;
  }
  rec.final_time = rec.steps * tau;
  rec.final_state = std::move(v);
  return rec;
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad initial condition '" + std::string(whole) + "'");
  }
  return value;
}

double parse_double(std::string_view s, std::string_view whole) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad initial condition '" + std::string(whole) + "'");
  }
}

}  // namespace

SpectralField1D make_initial(const PeriodicGrid1D& grid, std::string_view spec) {
  if (spec == "sin") return SpectralField1D::sample(grid, [](double x) { return std::sin(x); });
  if (spec.starts_with("sin:")) {
    auto rest = spec.substr(4);
    double amplitude = 1.0;
    if (auto colon = rest.find(':'); colon != std::string_view::npos) {
      amplitude = parse_double(rest.substr(colon + 1), spec);
      rest = rest.substr(0, colon);
    }
    const int l = parse_int(rest, spec);
    return SpectralField1D::sample(grid,
                                   [l, amplitude](double x) { return amplitude * std::sin(l * x); });
  }
  if (spec.starts_with("mix:")) {
    std::vector<int> modes;
    auto rest = spec.substr(4);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      modes.push_back(parse_int(rest.substr(0, comma), spec));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (modes.empty()) throw std::invalid_argument("mix: needs at least one mode");
    return SpectralField1D::sample(grid, [modes](double x) {
      double s = 0.0;
      for (int k : modes) s += std::sin(k * x);
      return s / static_cast<double>(modes.size());
    });
  }
  throw std::invalid_argument("unknown initial condition '" + std::string(spec) +
                              "' (expected sin, sin:L, sin:L:A or mix:k1,k2,...)");
}

std::vector<SweepRow> sweep_kappa(const std::vector<double>& kappas, const RunConfig& base_cfg,
                                  const SpectralField1D& u0) {
  std::vector<SweepRow> rows(kappas.size());
  const auto count = static_cast<std::ptrdiff_t>(kappas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    SweepRow& row = rows[i];
    row.kappa = kappas[i];
    try {
      if (!(row.kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
      RunConfig cfg = base_cfg;
      cfg.scheme.kappa = row.kappa;
      const auto rec = run(u0, cfg);
      row.stop_reason = rec.stop_reason;
      row.final_time = rec.final_time;
      row.max_abs_final = rec.final_state->max_abs();
      row.energy_final = energy(*rec.final_state, row.kappa).total;
      if (rec.stop_reason == StopReason::scheme_error) {
        row.verdict = "error";
        row.error = rec.error_message;
        continue;
      }
      try {
        row.verdict = classify_steady(*rec.final_state, row.kappa).to_string();
      } catch (const std::exception& e) {
        row.verdict = "unclassified";
        row.error = e.what();
      }
    } catch (const std::exception& e) {
      row.verdict = "error";
      row.error = e.what();
    }
  }
  return rows;
}

AmplificationTrace amplification_demo(double u0, double t_end, int euler_steps) {
  AmplificationTrace trace;
  trace.exact = u0 * std::exp(t_end);
  if (euler_steps < 1) euler_steps = 1;
  const double dt = t_end / euler_steps;
  double u = u0;
  trace.times.reserve(euler_steps + 1);
  trace.euler.reserve(euler_steps + 1);
  trace.times.push_back(0.0);
  trace.euler.push_back(u);
  for (int i = 1; i <= euler_steps; ++i) {
    u += dt * u;
    trace.times.push_back(i * dt);
    trace.euler.push_back(u);
  }
  return trace;
}

}  // namespace acfilter
