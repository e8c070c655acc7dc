#include "acfilter/schemes.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "acfilter/kernels.hpp"

namespace acfilter {

Scheme parse_scheme(std::string_view name) {
  if (name == "imex1") return Scheme::imex1;
  if (name == "ieuler") return Scheme::implicit_euler;
  if (name == "bdf2x") return Scheme::bdf2x;
  if (name == "strang") return Scheme::strang;
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected imex1, ieuler, bdf2x or strang)");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::imex1: return "imex1";
    case Scheme::implicit_euler: return "ieuler";
    case Scheme::bdf2x: return "bdf2x";
    case Scheme::strang: return "strang";
  }
  return "imex1";
}

void SchemeConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be > 0");
  // kappa = 0 is admitted: it degenerates to the pure reaction ODE.
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be >= 0");
}

StepWorkspace::StepWorkspace(const PeriodicGrid1D& grid, const SchemeConfig& cfg)
    : grid_(grid), cfg_(cfg) {
  cfg.validate();
  const int half = grid.size() / 2 + 1;
  imex_.resize(half);
  bdf2_.resize(half);
  heat_.resize(half);
  const double k2 = cfg.kappa * cfg.kappa;
  for (int k = 0; k < half; ++k) {
    const double kk = static_cast<double>(k) * k;
    imex_[k] = 1.0 / (1.0 + k2 * cfg.tau * kk);
    bdf2_[k] = 1.0 / (3.0 + 2.0 * cfg.tau * k2 * kk);
    heat_[k] = std::exp(-0.5 * k2 * kk * cfg.tau);
  }
}

namespace {

std::vector<Complex> imex_solve(std::span<const double> u, std::span<const double> explicit_at,
                                const StepWorkspace& ws) {
  const double tau = ws.config().tau;
  std::vector<double> rhs(u.size());
  // u - tau (w^3 - w) with w the state the nonlinearity is frozen at
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double w = explicit_at[j];
    rhs[j] = u[j] - tau * (w * w * w - w);
  }
  auto half = forward_transform(ws.grid(), rhs);
  kernels::scale_by_symbol(half, ws.imex_symbol());
  return half;
}

SpectralField1D require_finite(SpectralField1D w, const char* scheme) {
  for (double v : w.values()) {
    if (!std::isfinite(v)) throw SchemeError(std::string(scheme) + " step produced a non-finite value");
  }
  return w;
}

}  // namespace

SpectralField1D imex1_step(const SpectralField1D& u, const StepWorkspace& ws) {
  std::vector<double> rhs(u.size());
  kernels::imex_explicit_rhs(u.values(), ws.config().tau, rhs);
  auto half = forward_transform(u.grid(), rhs);
  kernels::scale_by_symbol(half, ws.imex_symbol());
  return require_finite(SpectralField1D::from_coeffs(u.grid(), std::move(half)), "imex1");
}

SpectralField1D imex1_step(const SpectralField1D& u, const SchemeConfig& cfg) {
  return imex1_step(u, StepWorkspace(u.grid(), cfg));
}

SpectralField1D implicit_euler_step(const SpectralField1D& u, const StepWorkspace& ws,
                                    ImplicitSolveOptions opts) {
  auto w = imex1_step(u, ws);
  double change = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    auto next = SpectralField1D::from_coeffs(u.grid(), imex_solve(u.values(), w.values(), ws));
    change = max_abs_difference(next, w);
    w = std::move(next);
    if (change <= opts.tol) return require_finite(std::move(w), "ieuler");
  }
  std::ostringstream msg;
  msg << "implicit Euler inner iteration did not converge in " << opts.max_iterations
      << " iterations (last max-norm update " << change << ")";
  throw SchemeError(msg.str());
}

SpectralField1D implicit_euler_step(const SpectralField1D& u, const SchemeConfig& cfg,
                                    ImplicitSolveOptions opts) {
  return implicit_euler_step(u, StepWorkspace(u.grid(), cfg), opts);
}

SpectralField1D bdf2x_step(const SpectralField1D& u_now, const SpectralField1D& u_prev,
                           const StepWorkspace& ws) {
  const double tau = ws.config().tau;
  const int n = u_now.size();
  std::vector<double> rhs(n);
  for (int j = 0; j < n; ++j) {
    const double a = u_now.value(j);
    const double b = u_prev.value(j);
    const double ext = 2.0 * a - b;
    rhs[j] = 4.0 * a - b - 2.0 * tau * (ext * ext * ext - ext);
  }
  auto half = forward_transform(u_now.grid(), rhs);
  kernels::scale_by_symbol(half, ws.bdf2_symbol());
  return require_finite(SpectralField1D::from_coeffs(u_now.grid(), std::move(half)), "bdf2x");
}

SpectralField1D bdf2x_step(const SpectralField1D& u_now, const SpectralField1D& u_prev,
                           const SchemeConfig& cfg) {
  return bdf2x_step(u_now, u_prev, StepWorkspace(u_now.grid(), cfg));
}

SpectralField1D strang_step(const SpectralField1D& u, const StepWorkspace& ws) {
  std::vector<Complex> half(u.half_coeffs().begin(), u.half_coeffs().end());
  kernels::scale_by_symbol(half, ws.half_heat_symbol());
  auto mid = inverse_transform(u.grid(), half);
  if (!kernels::reaction_flow(mid, ws.config().tau)) {
    throw SchemeError("Strang reaction substep: u^2 + (1-u^2) exp(-2 tau) <= 0");
  }
  half = forward_transform(u.grid(), mid);
  kernels::scale_by_symbol(half, ws.half_heat_symbol());
  return require_finite(SpectralField1D::from_coeffs(u.grid(), std::move(half)), "strang");
}

SpectralField1D strang_step(const SpectralField1D& u, const SchemeConfig& cfg) {
  return strang_step(u, StepWorkspace(u.grid(), cfg));
}

Stepper::Stepper(const PeriodicGrid1D& grid, const SchemeConfig& cfg) : ws_(grid, cfg) {}

SpectralField1D Stepper::step(const SpectralField1D& u) {
  switch (ws_.config().scheme) {
    case Scheme::imex1: return imex1_step(u, ws_);
    case Scheme::implicit_euler: return implicit_euler_step(u, ws_);
    case Scheme::strang: return strang_step(u, ws_);
    case Scheme::bdf2x: {
      auto next = prev_ ? bdf2x_step(u, *prev_, ws_) : imex1_step(u, ws_);
      prev_ = u;
      return next;
    }
  }
  throw std::logic_error("unhandled scheme");
}

}  // namespace acfilter
