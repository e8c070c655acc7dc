#include "acfilter/field2d.hpp"

#include <stdexcept>
#include <string>

#include "acfilter/kernels.hpp"
#include "acfilter/spectral.hpp"

namespace acfilter {

PeriodicGrid2D::PeriodicGrid2D(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
    throw std::invalid_argument("PeriodicGrid2D: sizes must be even and >= 8, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
}

double PeriodicGrid2D::x(int i) const { return -kPi + 2.0 * kPi * i / nx_; }
double PeriodicGrid2D::y(int j) const { return -kPi + 2.0 * kPi * j / ny_; }

SpectralField2D SpectralField2D::from_values(const PeriodicGrid2D& grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("SpectralField2D::from_values: length mismatch");
  }
  std::vector<Complex> half(grid.half_size());
  fft2d(grid.nx(), grid.ny()).forward(values, half);
  return SpectralField2D(grid, std::move(values), std::move(half));
}

SpectralField2D SpectralField2D::from_coeffs(const PeriodicGrid2D& grid, std::vector<Complex> half) {
  if (half.size() != grid.half_size()) {
    throw std::invalid_argument("SpectralField2D::from_coeffs: length mismatch");
  }
  std::vector<double> values(grid.size());
  fft2d(grid.nx(), grid.ny()).inverse(half, values);
  return SpectralField2D(grid, std::move(values), std::move(half));
}

SpectralField2D SpectralField2D::sample(const PeriodicGrid2D& grid,
                                        const std::function<double(double, double)>& fn) {
  std::vector<double> values(grid.size());
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.ny(); ++j) values[grid.index(i, j)] = fn(grid.x(i), grid.y(j));
  }
  return from_values(grid, std::move(values));
}

Complex SpectralField2D::coeff(int k1, int k2) const {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  if (k1 < -nx / 2 || k1 >= nx / 2 || k2 < -ny / 2 || k2 >= ny / 2) {
    throw std::out_of_range("SpectralField2D::coeff: mode out of range");
  }
  const int hy = grid_.half_ny();
  auto row = [nx](int k) { return ((k % nx) + nx) % nx; };
  if (k2 >= 0) return coeffs_[static_cast<std::size_t>(row(k1)) * hy + k2];
  if (k2 == -ny / 2) return coeffs_[static_cast<std::size_t>(row(k1)) * hy + ny / 2];
  return std::conj(coeffs_[static_cast<std::size_t>(row(-k1)) * hy + (-k2)]);
}

double SpectralField2D::max_abs() const { return kernels::max_abs(values_); }

}  // namespace acfilter
