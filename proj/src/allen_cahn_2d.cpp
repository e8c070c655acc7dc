#include "acfilter/allen_cahn_2d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "acfilter/filters.hpp"
#include "acfilter/kernels.hpp"

namespace acfilter {

namespace {

// Weighted 4 pi^2 sum over the full spectrum from the half spectrum; the
// k2 = 0 and Nyquist columns appear once, the rest twice.
template <typename W>
double parseval_2d(std::span<const Complex> half, int nx, int ny, W weight) {
  const int hy = ny / 2 + 1;
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static) if (half.size() >= 8192)
  for (int i = 0; i < nx; ++i) {
    const int k1 = signed_mode(i, nx);
    double row = 0.0;
    for (int j = 0; j < hy; ++j) {
      const double mult = (j == 0 || j == ny / 2) ? 1.0 : 2.0;
      const int k2 = j == ny / 2 ? -ny / 2 : j;
      row += mult * weight(k1, k2) * std::norm(half[static_cast<std::size_t>(i) * hy + j]);
    }
    s += row;
  }
  return 4.0 * kPi * kPi * s;
}

std::vector<double> imex_symbol_2d(const PeriodicGrid2D& grid, double kappa, double tau) {
  const int nx = grid.nx();
  const int hy = grid.half_ny();
  std::vector<double> sym(grid.half_size());
  for (int i = 0; i < nx; ++i) {
    const double k1 = std::abs(signed_mode(i, nx));
    for (int j = 0; j < hy; ++j) {
      sym[static_cast<std::size_t>(i) * hy + j] =
          1.0 / (1.0 + kappa * kappa * tau * (k1 * k1 + static_cast<double>(j) * j));
    }
  }
  return sym;
}

SpectralField2D step_with_symbol(const SpectralField2D& u, double tau,
                                 std::span<const double> symbol) {
  const auto& grid = u.grid();
  std::vector<double> rhs(grid.size());
  kernels::imex_explicit_rhs(u.values(), tau, rhs);
  std::vector<Complex> half(grid.half_size());
  fft2d(grid.nx(), grid.ny()).forward(rhs, half);
  kernels::scale_by_symbol(half, symbol);
  return SpectralField2D::from_coeffs(grid, std::move(half));
}

template <typename Mirror>
double defect(const SpectralField2D& u, Mirror mirror) {
  const auto& g = u.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static) if (g.size() >= 8192)
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const auto [mi, mj] = mirror(i, j);
      m = std::max(m, std::abs(u.value(i, j) + u.value(mi, mj)));
    }
  }
  return m;
}

}  // namespace

SpectralField2D imex1_step_2d(const SpectralField2D& u, const SchemeConfig& cfg) {
  cfg.validate();
  const auto symbol = imex_symbol_2d(u.grid(), cfg.kappa, cfg.tau);
  return step_with_symbol(u, cfg.tau, symbol);
}

double energy_2d(const SpectralField2D& u, double kappa) {
  const auto& g = u.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  const double grad_sq = parseval_2d(u.half_coeffs(), nx, ny, [nx, ny](int k1, int k2) {
    const double a = k1 == -nx / 2 ? 0.0 : static_cast<double>(k1) * k1;
    const double b = k2 == -ny / 2 ? 0.0 : static_cast<double>(k2) * k2;
    return a + b;
  });
  double pot = 0.0;
  for (double v : u.values()) {
    const double w = 1.0 - v * v;
    pot += w * w;
  }
  const double cell = (2.0 * kPi / nx) * (2.0 * kPi / ny);
  return 0.5 * kappa * kappa * grad_sq + 0.25 * pot * cell;
}

double x_symmetry_defect(const SpectralField2D& u) {
  const int nx = u.grid().nx();
  return defect(u, [nx](int i, int j) { return std::pair{(nx - i) % nx, j}; });
}

double y_symmetry_defect(const SpectralField2D& u) {
  const int ny = u.grid().ny();
  return defect(u, [ny](int i, int j) { return std::pair{i, (ny - j) % ny}; });
}

NoiseSource2D::NoiseSource2D(const PeriodicGrid2D& grid, const PerturbationConfig& cfg)
    : grid_(grid), cfg_(cfg), rng_(cfg.seed) {
  cfg.validate();
}

std::vector<Complex> NoiseSource2D::next() {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  const int hy = grid_.half_ny();
  const int hi = std::min({cfg_.band_hi, nx / 2 - 1, ny / 2 - 1});
  auto at = [hy](int i, int j) { return static_cast<std::size_t>(i) * hy + j; };
  std::vector<Complex> half(grid_.half_size(), Complex{});
  for (int i = 0; i < nx; ++i) {
    const int k1 = std::abs(signed_mode(i, nx));
    if (k1 < cfg_.band_lo || k1 > hi) continue;
    for (int j = cfg_.band_lo; j <= hi; ++j) {
      const double re = normal_(rng_);
      const double im = normal_(rng_);
      half[at(i, j)] = Complex(re, im);
    }
  }
  switch (cfg_.parity) {
    case NoiseParity::odd: project_sym2d(half, nx, ny); break;
    case NoiseParity::even: {
      // cos(k1 x) cos(k2 y): real and even in k1 (k2 >= 0 is stored directly).
      std::vector<Complex> prev(half.begin(), half.end());
      for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < hy; ++j) {
          half[at(i, j)] = 0.5 * (prev[at(i, j)].real() + prev[at((nx - i) % nx, j)].real());
        }
      }
      break;
    }
    case NoiseParity::unconstrained: {
      // Hermitian consistency on the self-conjugate k2 = 0 column.
      std::vector<Complex> prev(half.begin(), half.end());
      for (int i = 0; i < nx; ++i) {
        half[at(i, 0)] = 0.5 * (prev[at(i, 0)] + std::conj(prev[at((nx - i) % nx, 0)]));
      }
      break;
    }
  }
  const double h1 = std::sqrt(parseval_2d(half, nx, ny, [](int k1, int k2) {
    return 1.0 + static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
  }));
  const double scale = h1 > 0.0 ? cfg_.eps_star / h1 : 0.0;
  for (auto& c : half) c *= scale;
  return half;
}

void RunConfig2D::validate() const {
  scheme.validate();
  if (scheme.scheme != Scheme::imex1) {
    throw std::invalid_argument("2D runs support the imex1 scheme only");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  if (perturbation) perturbation->validate();
}

RunRecord2D run_2d(const SpectralField2D& u0, const RunConfig2D& cfg, double defect_watch) {
  cfg.validate();
  const auto& grid = u0.grid();
  const double tau = cfg.scheme.tau;
  const double kappa = cfg.scheme.kappa;
  const auto symbol = imex_symbol_2d(grid, kappa, tau);

  RunRecord2D rec;
  rec.defect_watch = defect_watch;
  std::optional<NoiseSource2D> noise;
  if (cfg.perturbation) noise.emplace(grid, *cfg.perturbation);

  auto finish = [&](const SpectralField2D& w) {
    if (!noise && !cfg.sym_filter) return w;
    std::vector<Complex> half(w.half_coeffs().begin(), w.half_coeffs().end());
    if (noise) kernels::add(half, noise->next(), half);
    if (cfg.sym_filter) project_sym2d(half, grid.nx(), grid.ny());
    return SpectralField2D::from_coeffs(grid, std::move(half));
  };
  auto record = [&](double t, const SpectralField2D& v, double res) {
    rec.times.push_back(t);
    rec.energies.push_back(energy_2d(v, kappa));
    rec.residuals.push_back(res);
    rec.max_abs.push_back(v.max_abs());
    rec.x_defects.push_back(x_symmetry_defect(v));
    rec.y_defects.push_back(y_symmetry_defect(v));
    if (!rec.first_defect_crossing &&
        std::max(rec.x_defects.back(), rec.y_defects.back()) > defect_watch) {
      rec.first_defect_crossing = t;
    }
  };

  std::vector<double> pending = cfg.snapshot_times;
  std::sort(pending.begin(), pending.end(), std::greater<>());
  auto snapshot = [&](double t, const SpectralField2D& v) {
    while (!pending.empty() && pending.back() <= t + 1e-9 * tau) {
      rec.snapshots.emplace_back(t, v);
      pending.pop_back();
    }
  };

  SpectralField2D v = finish(u0);
  record(0.0, v, std::numeric_limits<double>::quiet_NaN());
  snapshot(0.0, v);

  const long n_max = static_cast<long>(std::ceil(cfg.t_max / tau - 1e-9));
  for (long n = 0; n < n_max; ++n) {
    SpectralField2D w = step_with_symbol(v, tau, symbol);
    const double res = kernels::max_abs_diff(w.values(), v.values()) / tau;
    v = finish(w);
    rec.steps = n + 1;
    const double t = (n + 1) * tau;
    bool stop = false;
    if (res <= cfg.tol) {
      rec.stop_reason = StopReason::tol_reached;
      stop = true;
    } else if (n + 1 == n_max) {
      stop = true;
    }
    const bool recorded = stop || (n + 1) % cfg.record_every == 0;
    if (recorded) record(t, v, res);
    snapshot(t, v);
    if (stop) break;
    if (recorded && cfg.stop_after_crossing >= 0.0 && rec.first_defect_crossing &&
        t >= *rec.first_defect_crossing + cfg.stop_after_crossing) {
      rec.stopped_on_watch = true;
      break;
    }
  }
  rec.final_time = rec.steps * tau;
  rec.final_state = std::move(v);
  return rec;
}

}  // namespace acfilter
