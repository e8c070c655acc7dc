#pragma once

#include <vector>

#include "acfilter/quadrature.hpp"
#include "acfilter/spectral.hpp"

namespace acfilter {

/// The peak integral
///
///   g(N) = int_0^{pi/2} dtheta / sqrt(2 - N^2 (1 + sin^2 theta)),
///
/// written in terms of the gap d = 1 - N^2 and psi = pi/2 - theta as
/// int_0^{pi/2} dpsi / sqrt(sin^2 psi + d (1 + cos^2 psi)). The substitution
/// psi = a sinh t with a = sqrt(2 d) makes the integrand O(1) and smooth in t
/// even when d underflows 1 - N to zero in double precision, which is what
/// happens for kappa below roughly 0.05.
class PeakIntegral {
 public:
  explicit PeakIntegral(double gap);

  double gap() const { return gap_; }
  /// Total integral g.
  double total() const { return cumulative_.back(); }
  /// Partial integral from psi = 0 to psi(t) = a sinh t.
  double partial(double t) const;
  /// Integrand in t (dpsi/dt times the psi integrand).
  double integrand(double t) const;
  /// psi(t)
  double psi(double t) const;
  double t_of_psi(double psi) const;
  double t_max() const { return t_max_; }
  /// Solves partial(t) = s for t, s in [0, total()].
  double invert(double s) const;

  /// d g / d gap.
  double derivative() const;

  /// int_0^{t_max} f(psi(t)) * integrand(t) dt, i.e. int_0^{pi/2} f(psi) dpsi / sqrt(...).
  template <typename F>
  double weighted(F&& f) const;

 private:
  double gap_;
  double scale_;  // a = sqrt(2 gap)
  double t_max_;
  std::vector<double> breaks_;
  std::vector<double> cumulative_;
};

/// g as a function of the peak value, N in [0, 1). Throws for N >= 1.
double g_of_N(double n_peak);
/// g as a function of the gap 1 - N^2 in (0, 1].
double g_of_gap(double gap);

/// Gap 1 - N_kappa^2 solving g = pi / (2 sqrt(2) kappa); kappa in (0, 1).
double solve_gap(double kappa);
/// N_kappa itself (rounds to 1.0 once the gap falls below 1e-16).
double solve_n_peak(double kappa);

/// 1/(m+1) <= kappa < 1/m.
int m_kappa(double kappa);

/// Odd zero-up ground state U_kappa of kappa^2 u'' + u - u^3 = 0 on the torus.
class GroundState {
 public:
  explicit GroundState(double kappa);

  double kappa() const { return kappa_; }
  double n_peak() const { return n_peak_; }
  double gap() const { return integral_.gap(); }
  /// E_kappa^(0) from the first-integral form (quadrature).
  double energy0() const { return energy0_; }

  /// U_kappa(x) for any real x (2 pi periodic, odd, symmetric about pi/2).
  double operator()(double x) const;
  /// 1 - U_kappa(x)^2 without cancellation near the plateau, x in [0, pi/2].
  double one_minus_square(double x) const;
  SpectralField1D sample(const PeriodicGrid1D& grid) const;

  /// x(theta) = sqrt(2) kappa int_0^theta dphi / sqrt(2 - N^2 (1 + sin^2 phi));
  /// x(pi/2) = pi/2 up to the accuracy of the peak solve.
  double x_of_theta(double theta) const;
  const std::vector<double>& theta_nodes() const { return theta_nodes_; }
  const std::vector<double>& x_nodes() const { return x_nodes_; }

 private:
  double psi_at(double x_quarter) const;
  double kink_integrand(double s) const;
  double kink_partial(double s) const;
  double kink_s_of_x(double x_quarter) const;

  double kappa_;
  PeakIntegral integral_;
  double n_peak_;
  double energy0_;
  std::vector<double> theta_nodes_;
  std::vector<double> x_nodes_;
  // Near the zero, u = tanh s gives x = sqrt(2) kappa int_0^s dr / sqrt(1 - gap^2 cosh^4 r),
  // which avoids the cancellation of the peak-based formula. Used for x <= kink_x_limit_.
  double kink_x_limit_ = -1.0;
  std::vector<double> kink_breaks_;
  std::vector<double> kink_cumulative_;
};

/// E_kappa^(0) = int (U^2-1)^2/2 - (N^2-1)^2/4 dx by quadrature in t.
double ground_energy(const GroundState& gs);
/// Energy functional applied to U_kappa sampled on an n-point grid.
double ground_energy_spectral(const GroundState& gs, int n_modes);

// --- template implementation ---

template <typename F>
double PeakIntegral::weighted(F&& f) const {
  const auto& rule = gauss_legendre_20();
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < breaks_.size(); ++p) {
    s += rule.integrate([&](double t) { return f(psi(t)) * integrand(t); }, breaks_[p],
                        breaks_[p + 1]);
  }
  return s;
}

}  // namespace acfilter
