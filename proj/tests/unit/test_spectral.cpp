#include <cmath>
#include <limits>
#include <random>

#include "acfilter/ground_state.hpp"
#include "acfilter/reference.hpp"
#include "acfilter/spectral.hpp"
#include "doctest.h"

using namespace acfilter;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

SpectralField1D random_field(const PeriodicGrid1D& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(grid.size());
  for (auto& x : v) x = d(rng);
  return SpectralField1D::from_values(grid, std::move(v));
}

}  // namespace

TEST_CASE("grid layout") {
  const PeriodicGrid1D g(16);
  CHECK(g.node(0) == -kPi);
  CHECK(g.spacing() == doctest::Approx(2 * kPi / 16));
  CHECK(g.node(g.origin()) == doctest::Approx(0.0));
  CHECK(g.mirror(0) == 0);
  CHECK(g.mirror(3) == 13);
  CHECK_THROWS_AS(PeriodicGrid1D(6), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGrid1D(15), std::invalid_argument);
}

TEST_CASE("forward transform of pure modes") {
  const PeriodicGrid1D g(32);
  const auto one = SpectralField1D::constant(g, 1.0);
  CHECK(std::abs(one.coeff(0) - Complex(1.0, 0.0)) < 1e-15);
  for (int k = 1; k < 16; ++k) CHECK(std::abs(one.coeff(k)) < 1e-15);

  const auto s = SpectralField1D::sample(g, [](double x) { return std::sin(x); });
  CHECK(std::abs(s.coeff(1) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(s.coeff(-1) - Complex(0.0, 0.5)) < 1e-15);
  for (int k = 2; k < 16; ++k) CHECK(std::abs(s.coeff(k)) < 1e-15);
  CHECK(std::abs(s.coeff(0)) < 1e-15);

  const auto c = SpectralField1D::sample(g, [](double x) { return std::cos(2 * x); });
  CHECK(std::abs(c.coeff(2) - 0.5) < 1e-15);
  CHECK(std::abs(c.coeff(-2) - 0.5) < 1e-15);
  CHECK(std::abs(c.coeff(1)) < 1e-15);
}

TEST_CASE("FFT agrees with the direct DFT sum") {
  for (int n : {8, 16, 64, 250, 256}) {
    const PeriodicGrid1D g(n);
    const auto u = random_field(g, 7u + n);
    const auto ref = reference::dft(u.values());
    double diff = 0.0;
    for (int k = 0; k <= n / 2; ++k) diff = std::max(diff, std::abs(ref[k] - u.half_coeffs()[k]));
    CHECK(diff < 1e-14);
    const auto back = reference::idft(u.half_coeffs(), n);
    CHECK(max_abs_difference(u, SpectralField1D::from_values(g, back)) < 1e-13);
  }
}

TEST_CASE("length mismatch is rejected") {
  const PeriodicGrid1D g(16);
  const std::vector<double> v(15, 0.0);
  CHECK_THROWS_AS(forward_transform(g, v), std::invalid_argument);
  CHECK_THROWS_AS(SpectralField1D::from_values(g, v), std::invalid_argument);
  CHECK_THROWS_AS(SpectralField1D::from_coeffs(g, std::vector<Complex>(8)), std::invalid_argument);
}

TEST_CASE("round trip and Parseval") {
  const PeriodicGrid1D g(128);
  const auto u = random_field(g, 3);
  const auto back = inverse_transform(g, forward_transform(g, u.values()));
  double diff = 0.0;
  for (int j = 0; j < g.size(); ++j) diff = std::max(diff, std::abs(back[j] - u.value(j)));
  CHECK(diff <= 100 * kEps * u.max_abs());

  double point = 0.0;
  for (double v : u.values()) point += v * v;
  point *= g.spacing();
  double spec = 0.0;
  for (int k = -64; k < 64; ++k) spec += std::norm(u.coeff(k));
  spec *= 2 * kPi;
  CHECK(std::abs(point - spec) <= 1e-12 * point);
  CHECK(l2_norm(u) == doctest::Approx(std::sqrt(point)).epsilon(1e-13));
}

TEST_CASE("conjugate symmetry of coefficients") {
  const PeriodicGrid1D g(32);
  const auto u = random_field(g, 11);
  for (int k = 1; k < 16; ++k) CHECK(u.coeff(-k) == std::conj(u.coeff(k)));
  CHECK(u.coeff(0).imag() == 0.0);
  CHECK(u.coeff(-16).imag() == 0.0);
}

TEST_CASE("second derivative") {
  const PeriodicGrid1D g(64);
  const auto s = SpectralField1D::sample(g, [](double x) { return std::sin(x); });
  CHECK(max_abs_difference(second_derivative(s), combine(-1.0, s, 0.0, s)) < 1e-12);
  const auto c = SpectralField1D::constant(g, 0.3);
  CHECK(second_derivative(c).max_abs() < 1e-15);
  const auto s3 = SpectralField1D::sample(g, [](double x) { return std::sin(3 * x); });
  CHECK(max_abs_difference(second_derivative(s3), combine(-9.0, s3, 0.0, s3)) < 1e-12);
  // Nyquist content is dropped
  const auto nyq = SpectralField1D::sample(g, [](double x) { return std::cos(32 * x); });
  CHECK(second_derivative(nyq).max_abs() < 1e-12);
  const auto d1 = first_derivative(s);
  CHECK(max_abs_difference(d1, SpectralField1D::sample(g, [](double x) { return std::cos(x); })) < 1e-14);
}

TEST_CASE("energy functional") {
  const PeriodicGrid1D g(256);
  for (double kappa : {0.1, 0.9, 2.0}) {
    const auto zero = energy(SpectralField1D::constant(g, 0.0), kappa);
    CHECK(zero.total == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(energy(SpectralField1D::constant(g, 1.0), kappa).total == 0.0);
  }
  // sin x at kappa = 0.9: 0.81/2 * pi + int (1 - sin^2)^2 / 4 = 0.405 pi + 3 pi / 16
  const auto s = SpectralField1D::sample(g, [](double x) { return std::sin(x); });
  const auto e = energy(s, 0.9);
  CHECK(e.gradient_part == doctest::Approx(0.405 * kPi).epsilon(1e-14));
  CHECK(e.potential_part == doctest::Approx(3 * kPi / 16).epsilon(1e-14));
  CHECK(e.total == doctest::Approx(0.405 * kPi + 3 * kPi / 16).epsilon(1e-14));
  CHECK(e.total == doctest::Approx(1.8614).epsilon(1e-4));
  CHECK(e.total == doctest::Approx(e.gradient_part + e.potential_part));
  // a sin x: pi (a^2 kappa^2/2 + 1/2 - a^2/2 + 3 a^4/16)
  const double a = 0.5;
  const auto half = SpectralField1D::sample(g, [a](double x) { return a * std::sin(x); });
  const double expect = kPi * (a * a * 0.81 / 2 + 0.5 - a * a / 2 + 3 * a * a * a * a / 16);
  CHECK(energy(half, 0.9).total == doctest::Approx(expect).epsilon(1e-14));
  CHECK(energy(half, 0.9).total < kPi / 2 - 0.002);
}

TEST_CASE("residual functional") {
  const PeriodicGrid1D g(256);
  CHECK(residual(SpectralField1D::constant(g, 0.0), 0.9) == 0.0);
  CHECK(residual(SpectralField1D::constant(g, 1.0), 0.9) < 1e-15);
  // r = a sin x - sin^3 x with a = 1 - kappa^2;
  // int r^2 = a^2 pi - 2 a (3 pi / 4) + 5 pi / 8
  const double a = 1 - 0.81;
  const double expect = std::sqrt(a * a * kPi - 1.5 * a * kPi + 5 * kPi / 8);
  const auto s = SpectralField1D::sample(g, [](double x) { return std::sin(x); });
  CHECK(residual(s, 0.9) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(residual(GroundState(0.9).sample(g), 0.9) <= 1e-6);
}

TEST_CASE("norms, parity defect and sign changes") {
  const PeriodicGrid1D g(64);
  const auto s = SpectralField1D::sample(g, [](double x) { return std::sin(x); });
  const auto c = SpectralField1D::sample(g, [](double x) { return std::cos(x); });
  CHECK(l2_norm(s) == doctest::Approx(std::sqrt(kPi)));
  CHECK(h1_norm(s) == doctest::Approx(std::sqrt(2 * kPi)));
  CHECK(h1_distance(s, c) == doctest::Approx(std::sqrt(4 * kPi)));
  CHECK(l2_distance(s, s) == 0.0);
  CHECK(parity_defect(s) < 1e-15);
  CHECK(parity_defect(c) == doctest::Approx(2.0));
  CHECK(count_sign_changes(s, 1e-12) == 2);
  const auto s3 = SpectralField1D::sample(g, [](double x) { return std::sin(3 * x); });
  CHECK(count_sign_changes(s3, 1e-12) == 6);
  CHECK(count_sign_changes(SpectralField1D::constant(g, 1.0)) == 0);
}
