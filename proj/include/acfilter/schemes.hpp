#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acfilter/spectral.hpp"

namespace acfilter {

enum class Scheme { imex1, implicit_euler, bdf2x, strang };

/// Parses the CLI names `imex1`, `ieuler`, `bdf2x`, `strang`.
Scheme parse_scheme(std::string_view name);
std::string to_string(Scheme s);

struct SchemeConfig {
  Scheme scheme = Scheme::imex1;
  double tau = 0.01;
  double kappa = 0.9;

  void validate() const;
};

/// Raised when a time step cannot be completed (inner solver stalls, reaction
/// flow leaves its domain).
class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-run cache of diagonal multipliers for one grid and configuration.
class StepWorkspace {
 public:
  StepWorkspace(const PeriodicGrid1D& grid, const SchemeConfig& cfg);

  const SchemeConfig& config() const { return cfg_; }
  const PeriodicGrid1D& grid() const { return grid_; }
  /// 1 / (1 + kappa^2 tau k^2), k = 0..N/2.
  std::span<const double> imex_symbol() const { return imex_; }
  /// 1 / (3 + 2 tau kappa^2 k^2).
  std::span<const double> bdf2_symbol() const { return bdf2_; }
  /// exp(-kappa^2 k^2 tau / 2).
  std::span<const double> half_heat_symbol() const { return heat_; }

 private:
  PeriodicGrid1D grid_;
  SchemeConfig cfg_;
  std::vector<double> imex_;
  std::vector<double> bdf2_;
  std::vector<double> heat_;
};

/// w = (1 - kappa^2 tau d_xx)^{-1} [u - tau (u^3 - u)].
SpectralField1D imex1_step(const SpectralField1D& u, const SchemeConfig& cfg);
SpectralField1D imex1_step(const SpectralField1D& u, const StepWorkspace& ws);

struct ImplicitSolveOptions {
  double tol = 1e-13;
  int max_iterations = 100;
};

/// Backward Euler, w = u + tau (kappa^2 w'' + w - w^3), solved by fixed-point
/// iteration preconditioned with the IMEX operator.
SpectralField1D implicit_euler_step(const SpectralField1D& u, const SchemeConfig& cfg,
                                    ImplicitSolveOptions opts = {});
SpectralField1D implicit_euler_step(const SpectralField1D& u, const StepWorkspace& ws,
                                    ImplicitSolveOptions opts = {});

/// (3w - 4u + u_prev)/(2 tau) = kappa^2 w'' - f(2u - u_prev).
SpectralField1D bdf2x_step(const SpectralField1D& u_now, const SpectralField1D& u_prev,
                           const SchemeConfig& cfg);
SpectralField1D bdf2x_step(const SpectralField1D& u_now, const SpectralField1D& u_prev,
                           const StepWorkspace& ws);

/// Half diffusion, exact reaction flow, half diffusion.
SpectralField1D strang_step(const SpectralField1D& u, const SchemeConfig& cfg);
SpectralField1D strang_step(const SpectralField1D& u, const StepWorkspace& ws);

/// Stateful wrapper used by the run driver: dispatches on the scheme and keeps
/// the previous state needed by bdf2x (the first bdf2x step is an IMEX step).
class Stepper {
 public:
  Stepper(const PeriodicGrid1D& grid, const SchemeConfig& cfg);

  SpectralField1D step(const SpectralField1D& u);
  const StepWorkspace& workspace() const { return ws_; }
  void reset() { prev_.reset(); }

 private:
  StepWorkspace ws_;
  std::optional<SpectralField1D> prev_;
};

}  // namespace acfilter
