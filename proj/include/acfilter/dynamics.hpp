#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "acfilter/classify.hpp"
#include "acfilter/filters.hpp"
#include "acfilter/schemes.hpp"
#include "acfilter/spectral.hpp"

namespace acfilter {

enum class NoiseParity { odd, even, unconstrained };

NoiseParity parse_noise_parity(std::string_view name);
std::string to_string(NoiseParity p);

/// Model of the per-step machine error eps^n: random coefficients on the
/// modes band_lo..band_hi, rescaled so that ||eps^n||_{H^1} = eps_star.
struct PerturbationConfig {
  double eps_star = 1e-13;
  NoiseParity parity = NoiseParity::even;
  int band_lo = 0;
  int band_hi = 8;
  std::uint64_t seed = 12345;

  void validate() const;
};

/// Deterministic source of perturbation fields for one run.
class NoiseSource {
 public:
  NoiseSource(const PeriodicGrid1D& grid, const PerturbationConfig& cfg);

  /// Half-spectrum coefficients of the next eps^n.
  std::vector<Complex> next();

 private:
  PeriodicGrid1D grid_;
  PerturbationConfig cfg_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct RunConfig {
  SchemeConfig scheme;
  FilterSpec filter;
  double t_max = 1e5;
  double tol = 1e-12;
  int record_every = 100;
  std::optional<PerturbationConfig> perturbation;
  /// Evaluate the per-step energy inequality and sup-norm bounds of the
  /// filtered convergence theorem (costs two extra transforms per step).
  bool theorem_checks = false;
  /// Slack for floating-point evaluation of energy comparisons.
  double energy_slack = 1e-12;

  void validate() const;
};

enum class StopReason { tol_reached, t_max_reached, scheme_error };
std::string to_string(StopReason r);

/// Statistics gathered when RunConfig::theorem_checks is on.
struct TheoremDiagnostics {
  long steps = 0;
  // E(w) + ||w-u||^2/(5 tau) + kappa^2/2 ||d_x(w-u)||^2 <= E(u), checked where
  // its hypotheses hold (E(u) <= pi/2 - 0.001, max(|w|,|u|) <= 1.1).
  long inequality_checked = 0;
  long inequality_violations = 0;
  double worst_inequality_excess = -1e300;  // max of lhs - rhs
  long hypothesis_failures = 0;
  double sup_norm_u = 0.0;  // sup_n ||u^n||_inf (unperturbed step outputs)
  double sup_norm_v = 0.0;  // sup_n ||v^n||_inf (perturbed, filtered states)
  double min_energy_v = 1e300;  // over n >= 1
  double max_energy_v = -1e300;
  long energy_increases = 0;  // E(v^{n+1}) > E(v^n) + slack
};

struct RunRecord {
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> residuals;       // ||u^{n+1} - v^n||_inf / tau
  std::vector<double> max_abs;
  std::vector<double> u_at_zero;
  std::vector<double> pde_residuals;   // ||kappa^2 u'' + u - u^3||_2
  std::vector<double> parity_defects;  // max_j |u(x_j) + u(-x_j)|
  std::optional<SpectralField1D> final_state;
  StopReason stop_reason = StopReason::t_max_reached;
  std::string error_message;
  long steps = 0;
  double final_time = 0.0;
  TheoremDiagnostics theorem;

  std::size_t size() const { return times.size(); }
};

/// Iterates v^{n+1} = filter(step(v^n) + eps^{n+1}) from v^0 = filter(u0 + eps^0)
/// until the step residual drops to tol or t_max is reached.
RunRecord run(const SpectralField1D& u0, const RunConfig& cfg);

/// Initial data grammar: `sin`, `sin:L`, `sin:L:A` (A sin(L x)) and
/// `mix:k1,k2,...` (mean of sin(k_i x)).
SpectralField1D make_initial(const PeriodicGrid1D& grid, std::string_view spec);

struct SweepRow {
  double kappa = 0.0;
  double max_abs_final = 0.0;
  std::string verdict;
  double energy_final = 0.0;
  StopReason stop_reason = StopReason::t_max_reached;
  double final_time = 0.0;
  std::string error;  // empty on success
};

/// Independent runs over kappa (concurrently); rows are ordered as given.
/// The scheme's kappa in base_cfg is replaced per row.
std::vector<SweepRow> sweep_kappa(const std::vector<double>& kappas, const RunConfig& base_cfg,
                                  const SpectralField1D& u0);

struct AmplificationTrace {
  double exact = 0.0;  // u0 exp(t_end)
  std::vector<double> times;
  std::vector<double> euler;  // forward Euler for u' = u
};

AmplificationTrace amplification_demo(double u0, double t_end, int euler_steps = 1000);

}  // namespace acfilter
