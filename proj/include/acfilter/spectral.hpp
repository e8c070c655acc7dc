#pragma once

#include <functional>
#include <span>
#include <vector>

#include "acfilter/fft.hpp"

namespace acfilter {

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid on the periodic torus [-pi, pi): x_j = -pi + 2 pi j / N.
class PeriodicGrid1D {
 public:
  explicit PeriodicGrid1D(int n_modes);

  int size() const { return n_; }
  double spacing() const { return 2.0 * kPi / n_; }
  double node(int j) const { return -kPi + spacing() * j; }
  std::vector<double> nodes() const;
  /// Index of the node at -x_j (mirror through the origin).
  int mirror(int j) const { return (n_ - j) % n_; }
  /// Index of x = 0.
  int origin() const { return n_ / 2; }

  bool operator==(const PeriodicGrid1D&) const = default;

 private:
  int n_;
};

/// Real periodic grid function together with its Fourier coefficients.
///
/// Coefficients follow c(k) = (1/N) sum_j u(x_j) exp(-i k x_j) and are stored
/// for k = 0..N/2 only; `coeff(k)` reconstructs negative k by conjugation.
/// The entry at k = N/2 is the Nyquist mode k = -N/2.
class SpectralField1D {
 public:
  static SpectralField1D from_values(const PeriodicGrid1D& grid, std::vector<double> values);
  /// Imaginary parts of the k = 0 and Nyquist entries are dropped.
  static SpectralField1D from_coeffs(const PeriodicGrid1D& grid, std::vector<Complex> half);
  static SpectralField1D sample(const PeriodicGrid1D& grid,
                                const std::function<double(double)>& fn);
  static SpectralField1D constant(const PeriodicGrid1D& grid, double value);

  const PeriodicGrid1D& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<const Complex> half_coeffs() const { return coeffs_; }
  double value(int j) const { return values_[j]; }
  /// Coefficient for any k in [-N/2, N/2).
  Complex coeff(int k) const;

  double max_abs() const;

 private:
  SpectralField1D(PeriodicGrid1D grid, std::vector<double> values, std::vector<Complex> coeffs)
      : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

  PeriodicGrid1D grid_;
  std::vector<double> values_;
  std::vector<Complex> coeffs_;
};

struct EnergyReport {
  double total = 0.0;
  double gradient_part = 0.0;
  double potential_part = 0.0;
};

/// Forward transform of raw samples; length must equal the grid size.
std::vector<Complex> forward_transform(const PeriodicGrid1D& grid, std::span<const double> values);
std::vector<double> inverse_transform(const PeriodicGrid1D& grid, std::span<const Complex> half);

SpectralField1D first_derivative(const SpectralField1D& u);
/// Multiplies coefficients by -k^2 and drops the Nyquist mode.
SpectralField1D second_derivative(const SpectralField1D& u);

/// E(u) = int kappa^2/2 u_x^2 + (1-u^2)^2/4 over the torus, periodic trapezoid
/// rule with a spectral derivative.
EnergyReport energy(const SpectralField1D& u, double kappa);

/// || kappa^2 u'' + u - u^3 ||_{L^2}.
double residual(const SpectralField1D& u, double kappa);

double l2_norm(const SpectralField1D& u);
double l2_distance(const SpectralField1D& a, const SpectralField1D& b);
/// sqrt(||v||^2 + ||v_x||^2), computed from the coefficients.
double h1_norm(const SpectralField1D& v);
double h1_distance(const SpectralField1D& a, const SpectralField1D& b);
double max_abs_difference(const SpectralField1D& a, const SpectralField1D& b);

/// max_j |u(x_j) + u(-x_j)|; zero for an exactly odd grid function.
double parity_defect(const SpectralField1D& u);

/// Number of sign changes around the periodic grid (zeros skipped).
int count_sign_changes(const SpectralField1D& u, double zero_tol = 0.0);

/// Coefficient-wise a*u + b*v (same grid).
SpectralField1D combine(double a, const SpectralField1D& u, double b, const SpectralField1D& v);

}  // namespace acfilter
