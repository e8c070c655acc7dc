#include "acfilter/reference.hpp"

#include <cmath>
#include <numbers>

namespace acfilter::reference {

namespace {

constexpr double kPi = std::numbers::pi;

double node(int j, int n) { return -kPi + 2.0 * kPi * j / n; }

int signed_k(int i, int n) { return i < n / 2 ? i : i - n; }

// Full complex DFT of a complex sequence, same sign/normalization convention.
std::vector<Complex> dft_full(const std::vector<Complex>& u) {
  const int n = static_cast<int>(u.size());
  std::vector<Complex> c(n);
  for (int i = 0; i < n; ++i) {
    const int k = signed_k(i, n);
    Complex s{};
    for (int j = 0; j < n; ++j) s += u[j] * std::polar(1.0, -k * node(j, n));
    c[i] = s / static_cast<double>(n);
  }
  return c;
}

std::vector<Complex> idft_full(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size());
  std::vector<Complex> u(n);
  for (int j = 0; j < n; ++j) {
    Complex s{};
    for (int i = 0; i < n; ++i) s += c[i] * std::polar(1.0, signed_k(i, n) * node(j, n));
    u[j] = s;
  }
  return u;
}

}  // namespace

std::vector<Complex> dft(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  std::vector<Complex> half(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) {
    Complex s{};
    for (int j = 0; j < n; ++j) s += values[j] * std::polar(1.0, -k * node(j, n));
    half[k] = s / static_cast<double>(n);
  }
  return half;
}

std::vector<double> idft(std::span<const Complex> half, int n) {
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) {
    const double x = node(j, n);
    double s = half[0].real();
    for (int k = 1; k < n / 2; ++k) s += 2.0 * (half[k] * std::polar(1.0, k * x)).real();
    s += half[n / 2].real() * std::cos(n / 2 * x);
    u[j] = s;
  }
  return u;
}

std::vector<Complex> dft2(std::span<const double> values, int nx, int ny) {
  const int hy = ny / 2 + 1;
  // Transform along y for every x row, then along x for every kept ky column.
  std::vector<Complex> rows(static_cast<std::size_t>(nx) * hy);
  for (int i = 0; i < nx; ++i) {
    auto r = dft(values.subspan(static_cast<std::size_t>(i) * ny, ny));
    for (int j = 0; j < hy; ++j) rows[static_cast<std::size_t>(i) * hy + j] = r[j];
  }
  std::vector<Complex> out(rows.size());
  std::vector<Complex> col(nx);
  for (int j = 0; j < hy; ++j) {
    for (int i = 0; i < nx; ++i) col[i] = rows[static_cast<std::size_t>(i) * hy + j];
    auto c = dft_full(col);
    for (int i = 0; i < nx; ++i) out[static_cast<std::size_t>(i) * hy + j] = c[i];
  }
  return out;
}

std::vector<double> idft2(std::span<const Complex> half, int nx, int ny) {
  const int hy = ny / 2 + 1;
  std::vector<Complex> cols(half.size());
  std::vector<Complex> col(nx);
  for (int j = 0; j < hy; ++j) {
    for (int i = 0; i < nx; ++i) col[i] = half[static_cast<std::size_t>(i) * hy + j];
    auto u = idft_full(col);
    for (int i = 0; i < nx; ++i) cols[static_cast<std::size_t>(i) * hy + j] = u[i];
  }
  std::vector<double> out(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    auto row = idft(std::span<const Complex>(cols).subspan(static_cast<std::size_t>(i) * hy, hy), ny);
    for (int j = 0; j < ny; ++j) out[static_cast<std::size_t>(i) * ny + j] = row[j];
  }
  return out;
}

std::vector<double> imex1_step(std::span<const double> u, double kappa, double tau) {
  const int n = static_cast<int>(u.size());
  std::vector<double> rhs(n);
  for (int j = 0; j < n; ++j) rhs[j] = u[j] - tau * (u[j] * u[j] * u[j] - u[j]);
  auto c = dft(rhs);
  for (int k = 0; k <= n / 2; ++k) c[k] /= 1.0 + kappa * kappa * tau * k * k;
  return idft(c, n);
}

std::vector<double> imex1_step_2d(std::span<const double> u, int nx, int ny, double kappa,
                                  double tau) {
  std::vector<double> rhs(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) rhs[j] = u[j] - tau * (u[j] * u[j] * u[j] - u[j]);
  auto c = dft2(rhs, nx, ny);
  const int hy = ny / 2 + 1;
  for (int i = 0; i < nx; ++i) {
    const double k1 = signed_k(i, nx);
    for (int j = 0; j < hy; ++j) {
      c[static_cast<std::size_t>(i) * hy + j] /= 1.0 + kappa * kappa * tau * (k1 * k1 + double(j) * j);
    }
  }
  return idft2(c, nx, ny);
}

}  // namespace acfilter::reference
