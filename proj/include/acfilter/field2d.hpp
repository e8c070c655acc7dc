#pragma once

#include <functional>
#include <span>
#include <vector>

#include "acfilter/fft.hpp"

namespace acfilter {

/// Tensor grid on [-pi, pi)^2 with nx by ny nodes; values are row-major with
/// the x index outermost.
class PeriodicGrid2D {
 public:
  PeriodicGrid2D(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int half_ny() const { return ny_ / 2 + 1; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t half_size() const { return static_cast<std::size_t>(nx_) * half_ny(); }
  double x(int i) const;
  double y(int j) const;
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

  bool operator==(const PeriodicGrid2D&) const = default;

 private:
  int nx_;
  int ny_;
};

/// Real field on a PeriodicGrid2D with coefficients
/// c(k1,k2) = (1/(nx ny)) sum u(x_i, y_j) exp(-i(k1 x_i + k2 y_j)),
/// stored for all k1 and k2 = 0..ny/2 (index i*(ny/2+1) + k2).
class SpectralField2D {
 public:
  static SpectralField2D from_values(const PeriodicGrid2D& grid, std::vector<double> values);
  static SpectralField2D from_coeffs(const PeriodicGrid2D& grid, std::vector<Complex> half);
  static SpectralField2D sample(const PeriodicGrid2D& grid,
                                const std::function<double(double, double)>& fn);

  const PeriodicGrid2D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const Complex> half_coeffs() const { return coeffs_; }
  double value(int i, int j) const { return values_[grid_.index(i, j)]; }
  /// Coefficient for k1 in [-nx/2, nx/2), k2 in [-ny/2, ny/2).
  Complex coeff(int k1, int k2) const;

  double max_abs() const;

 private:
  SpectralField2D(PeriodicGrid2D grid, std::vector<double> values, std::vector<Complex> coeffs)
      : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

  PeriodicGrid2D grid_;
  std::vector<double> values_;
  std::vector<Complex> coeffs_;
};

}  // namespace acfilter
