#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acfilter/dynamics.hpp"
#include "acfilter/field2d.hpp"
#include "acfilter/schemes.hpp"

namespace acfilter {

/// w = (1 - kappa^2 tau Laplacian)^{-1}[u - tau(u^3 - u)]. Only the IMEX scheme
/// exists in 2D; cfg.scheme is ignored.
SpectralField2D imex1_step_2d(const SpectralField2D& u, const SchemeConfig& cfg);

/// E(u) = int kappa^2/2 |grad u|^2 + (1-u^2)^2/4 over [-pi, pi)^2.
double energy_2d(const SpectralField2D& u, double kappa);

/// max |u(x,y) + u(-x,y)| and max |u(x,y) + u(x,-y)| over the grid.
double x_symmetry_defect(const SpectralField2D& u);
double y_symmetry_defect(const SpectralField2D& u);

/// 2D noise with the same contract as NoiseSource: ||eps||_{H^1} = eps_star,
/// modes |k1|, |k2| in [band_lo, band_hi]. `even` gives cos-cos content, `odd`
/// is projected with the symmetry filter before rescaling.
class NoiseSource2D {
 public:
  NoiseSource2D(const PeriodicGrid2D& grid, const PerturbationConfig& cfg);
  std::vector<Complex> next();

 private:
  PeriodicGrid2D grid_;
  PerturbationConfig cfg_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct RunConfig2D {
  SchemeConfig scheme{Scheme::imex1, 0.01, 0.1};
  bool sym_filter = true;
  double t_max = 1e4;
  double tol = 1e-12;
  int record_every = 100;
  std::optional<PerturbationConfig> perturbation;
  /// Times at which to keep a copy of the state (nearest step at or after).
  std::vector<double> snapshot_times;
  /// If >= 0, end the run this long after the defect watch level is first
  /// crossed (checked at recorded times).
  double stop_after_crossing = -1.0;

  void validate() const;
};

struct RunRecord2D {
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> residuals;
  std::vector<double> max_abs;
  std::vector<double> x_defects;
  std::vector<double> y_defects;
  std::vector<std::pair<double, SpectralField2D>> snapshots;
  std::optional<SpectralField2D> final_state;
  StopReason stop_reason = StopReason::t_max_reached;
  long steps = 0;
  double final_time = 0.0;
  /// Earliest recorded time with max(defects) above the watch level, if any.
  std::optional<double> first_defect_crossing;
  double defect_watch = 0.1;
  bool stopped_on_watch = false;

  std::size_t size() const { return times.size(); }
};

RunRecord2D run_2d(const SpectralField2D& u0, const RunConfig2D& cfg, double defect_watch = 0.1);

}  // namespace acfilter
