#include "acfilter/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "acfilter/kernels.hpp"

namespace acfilter {

PeriodicGrid1D::PeriodicGrid1D(int n_modes) : n_(n_modes) {
  if (n_modes < 8 || n_modes % 2 != 0) {
    throw std::invalid_argument("PeriodicGrid1D: N must be even and >= 8, got " +
                                std::to_string(n_modes));
  }
}

std::vector<double> PeriodicGrid1D::nodes() const {
  std::vector<double> x(n_);
  for (int j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

SpectralField1D SpectralField1D::from_values(const PeriodicGrid1D& grid, std::vector<double> values) {
  auto coeffs = forward_transform(grid, values);
  return SpectralField1D(grid, std::move(values), std::move(coeffs));
}

SpectralField1D SpectralField1D::from_coeffs(const PeriodicGrid1D& grid, std::vector<Complex> half) {
  if (static_cast<int>(half.size()) != grid.size() / 2 + 1) {
    throw std::invalid_argument("SpectralField1D::from_coeffs: expected N/2+1 coefficients");
  }
  half.front().imag(0.0);
  half.back().imag(0.0);
  auto values = inverse_transform(grid, half);
  return SpectralField1D(grid, std::move(values), std::move(half));
}

SpectralField1D SpectralField1D::sample(const PeriodicGrid1D& grid,
                                        const std::function<double(double)>& fn) {
  std::vector<double> values(grid.size());
  for (int j = 0; j < grid.size(); ++j) values[j] = fn(grid.node(j));
  return from_values(grid, std::move(values));
}

SpectralField1D SpectralField1D::constant(const PeriodicGrid1D& grid, double value) {
  std::vector<Complex> half(grid.size() / 2 + 1, Complex{});
  half[0] = value;
  return SpectralField1D(grid, std::vector<double>(grid.size(), value), std::move(half));
}

Complex SpectralField1D::coeff(int k) const {
  const int n = size();
  if (k < -n / 2 || k >= n / 2) {
    throw std::out_of_range("SpectralField1D::coeff: mode outside [-N/2, N/2)");
  }
  if (k == -n / 2) return coeffs_[n / 2];
  return k >= 0 ? coeffs_[k] : std::conj(coeffs_[-k]);
}

double SpectralField1D::max_abs() const { return kernels::max_abs(values_); }

std::vector<Complex> forward_transform(const PeriodicGrid1D& grid, std::span<const double> values) {
  if (static_cast<int>(values.size()) != grid.size()) {
    throw std::invalid_argument("forward_transform: length " + std::to_string(values.size()) +
                                " does not match grid size " + std::to_string(grid.size()));
  }
  std::vector<Complex> half(grid.size() / 2 + 1);
  fft1d(grid.size()).forward(values, half);
  return half;
}

std::vector<double> inverse_transform(const PeriodicGrid1D& grid, std::span<const Complex> half) {
  std::vector<double> values(grid.size());
  fft1d(grid.size()).inverse(half, values);
  return values;
}

SpectralField1D first_derivative(const SpectralField1D& u) {
  const int n = u.size();
  std::vector<Complex> half(u.half_coeffs().begin(), u.half_coeffs().end());
  for (int k = 0; k < n / 2; ++k) half[k] *= Complex(0.0, k);
  half[n / 2] = 0.0;
  return SpectralField1D::from_coeffs(u.grid(), std::move(half));
}

SpectralField1D second_derivative(const SpectralField1D& u) {
  const int n = u.size();
  std::vector<Complex> half(u.half_coeffs().begin(), u.half_coeffs().end());
  for (int k = 0; k < n / 2; ++k) half[k] *= -static_cast<double>(k) * k;
  half[n / 2] = 0.0;
  return SpectralField1D::from_coeffs(u.grid(), std::move(half));
}

namespace {

// 2 pi sum_k w(k) |c(k)|^2 over the full spectrum, from the half spectrum.
// The Nyquist entry carries weight zero for derivative-type weights.
template <typename Weight>
double parseval(std::span<const Complex> half, int n, Weight weight) {
  double s = weight(0) * std::norm(half[0]);
  for (int k = 1; k < n / 2; ++k) s += 2.0 * weight(k) * std::norm(half[k]);
  s += weight(-n / 2) * std::norm(half[n / 2]);
  return 2.0 * kPi * s;
}

}  // namespace

EnergyReport energy(const SpectralField1D& u, double kappa) {
  const int n = u.size();
  // Trapezoid of u_x^2 equals Parseval exactly for the band-limited derivative.
  const double grad_sq = parseval(u.half_coeffs(), n, [n](int k) {
    return k == -n / 2 ? 0.0 : static_cast<double>(k) * k;
  });
  double pot = 0.0;
  for (double v : u.values()) {
    const double w = 1.0 - v * v;
    pot += w * w;
  }
  EnergyReport r;
  r.gradient_part = 0.5 * kappa * kappa * grad_sq;
  r.potential_part = 0.25 * pot * u.grid().spacing();
  r.total = r.gradient_part + r.potential_part;
  return r;
}

double residual(const SpectralField1D& u, double kappa) {
  const auto uxx = second_derivative(u);
  const double k2 = kappa * kappa;
  double s = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    const double v = u.value(j);
    const double r = k2 * uxx.value(j) + v - v * v * v;
    s += r * r;
  }
  return std::sqrt(s * u.grid().spacing());
}

double l2_norm(const SpectralField1D& u) {
  double s = 0.0;
  for (double v : u.values()) s += v * v;
  return std::sqrt(s * u.grid().spacing());
}

SpectralField1D combine(double a, const SpectralField1D& u, double b, const SpectralField1D& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("combine: grid mismatch");
  std::vector<Complex> half(u.half_coeffs().size());
  for (std::size_t k = 0; k < half.size(); ++k) {
    half[k] = a * u.half_coeffs()[k] + b * v.half_coeffs()[k];
  }
  return SpectralField1D::from_coeffs(u.grid(), std::move(half));
}

double l2_distance(const SpectralField1D& a, const SpectralField1D& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("l2_distance: grid mismatch");
  double s = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    const double d = a.value(j) - b.value(j);
    s += d * d;
  }
  return std::sqrt(s * a.grid().spacing());
}

double h1_norm(const SpectralField1D& v) {
  const int n = v.size();
  return std::sqrt(parseval(v.half_coeffs(), n, [n](int k) {
    return k == -n / 2 ? 1.0 : 1.0 + static_cast<double>(k) * k;
  }));
}

double h1_distance(const SpectralField1D& a, const SpectralField1D& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("h1_distance: grid mismatch");
  const int n = a.size();
  std::vector<Complex> d(a.half_coeffs().size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = a.half_coeffs()[k] - b.half_coeffs()[k];
  return std::sqrt(parseval(std::span<const Complex>(d), n, [n](int k) {
    return k == -n / 2 ? 1.0 : 1.0 + static_cast<double>(k) * k;
  }));
}

double max_abs_difference(const SpectralField1D& a, const SpectralField1D& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("max_abs_difference: grid mismatch");
  return kernels::max_abs_diff(a.values(), b.values());
}

double parity_defect(const SpectralField1D& u) {
  double m = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    m = std::max(m, std::abs(u.value(j) + u.value(u.grid().mirror(j))));
  }
  return m;
}

int count_sign_changes(const SpectralField1D& u, double zero_tol) {
  std::vector<int> signs;
  for (double v : u.values()) {
    if (std::abs(v) > zero_tol) signs.push_back(v > 0 ? 1 : -1);
  }
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  }
  return changes;
}

}  // namespace acfilter
