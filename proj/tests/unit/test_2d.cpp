#include <cmath>
#include <random>

#include "acfilter/allen_cahn_2d.hpp"
#include "acfilter/filters.hpp"
#include "acfilter/reference.hpp"
#include "doctest.h"

using namespace acfilter;

namespace {

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("2D grid and transforms") {
  const PeriodicGrid2D g(16, 8);
  CHECK(g.x(0) == -kPi);
  CHECK(g.y(4) == doctest::Approx(0.0));
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> v(g.size());
  for (auto& x : v) x = d(rng);
  const auto u = SpectralField2D::from_values(g, v);
  const auto back = SpectralField2D::from_coeffs(g, std::vector<Complex>(u.half_coeffs().begin(), u.half_coeffs().end()));
  CHECK(max_diff(back.values(), v) < 1e-15);
  const auto ref = reference::dft2(v, 16, 8);
  double diff = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) diff = std::max(diff, std::abs(ref[i] - u.half_coeffs()[i]));
  CHECK(diff < 1e-14);
  const auto ss = SpectralField2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK(std::abs(ss.coeff(1, 1) - Complex(-0.25, 0.0)) < 1e-15);
}

TEST_CASE("2D step fixes constant states") {
  const PeriodicGrid2D g(16, 16);
  const SchemeConfig cfg{Scheme::imex1, 0.01, 0.1};
  for (double c : {0.0, 1.0, -1.0}) {
    const auto u = SpectralField2D::sample(g, [c](double, double) { return c; });
    CHECK(max_diff(imex1_step_2d(u, cfg).values(), u.values()) < 1e-15);
  }
}

TEST_CASE("2D step agrees with the serial reference") {
  const PeriodicGrid2D g(16, 16);
  const auto u = SpectralField2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y) + 0.1 * std::cos(2 * y); });
  const auto fast = imex1_step_2d(u, {Scheme::imex1, 0.05, 0.3});
  const auto ref = reference::imex1_step_2d(u.values(), 16, 16, 0.3, 0.05);
  CHECK(max_diff(fast.values(), ref) < 1e-13);
}

TEST_CASE("y-independent data evolves like the 1D step") {
  const int n = 32;
  const PeriodicGrid2D g(n, n);
  const PeriodicGrid1D g1(n);
  auto f = [](double x) { return 0.8 * std::sin(x) + 0.1 * std::cos(3 * x); };
  const auto u2 = SpectralField2D::sample(g, [&f](double x, double) { return f(x); });
  const auto u1 = SpectralField1D::sample(g1, f);
  const SchemeConfig cfg{Scheme::imex1, 0.02, 0.4};
  const auto w2 = imex1_step_2d(u2, cfg);
  const auto w1 = imex1_step(u1, cfg);
  double diff = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(w2.value(i, j) - w1.value(i)));
  }
  CHECK(diff < 1e-12);
}

TEST_CASE("2D energy and symmetry defects") {
  const PeriodicGrid2D g(64, 64);
  const auto zero = SpectralField2D::sample(g, [](double, double) { return 0.0; });
  CHECK(energy_2d(zero, 0.1) == doctest::Approx(kPi * kPi).epsilon(1e-14));
  const auto one = SpectralField2D::sample(g, [](double, double) { return 1.0; });
  CHECK(energy_2d(one, 0.1) == 0.0);
  // sin x sin y: gradient pi^2 kappa^2, potential pi^2 (4 - 2 + 9/16) / 4
  const auto ss = SpectralField2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const double expect = kPi * kPi * (0.01 + 0.25 * (4 - 2 + 9.0 / 16));
  CHECK(energy_2d(ss, 0.1) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(x_symmetry_defect(ss) < 1e-15);
  CHECK(y_symmetry_defect(ss) < 1e-15);
  const auto cs = SpectralField2D::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  CHECK(x_symmetry_defect(cs) == doctest::Approx(2.0));
  CHECK(y_symmetry_defect(cs) < 1e-15);
}

TEST_CASE("2D noise parities") {
  const PeriodicGrid2D g(32, 32);
  PerturbationConfig p;
  p.eps_star = 1e-10;
  p.parity = NoiseParity::odd;
  p.band_lo = 1;
  NoiseSource2D src(g, p);
  const auto eta = SpectralField2D::from_coeffs(g, src.next());
  CHECK(eta.max_abs() > 0.0);
  CHECK(x_symmetry_defect(eta) <= 1e-24);
  CHECK(y_symmetry_defect(eta) <= 1e-24);
}

TEST_CASE("short 2D runs") {
  const PeriodicGrid2D g(32, 32);
  const auto u0 = SpectralField2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  RunConfig2D cfg;
  cfg.t_max = 2.0;
  cfg.record_every = 10;
  cfg.snapshot_times = {0.0, 1.0};
  const auto rec = run_2d(u0, cfg);
  CHECK(rec.steps == 200);
  CHECK(rec.snapshots.size() == 2);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    CHECK(rec.x_defects[i] <= 1e-12);
    CHECK(rec.y_defects[i] <= 1e-12);
    if (i > 0) CHECK(rec.energies[i] <= rec.energies[i - 1] + 1e-13);
  }
  CHECK_FALSE(rec.first_defect_crossing.has_value());

  RunConfig2D bad;
  bad.scheme.scheme = Scheme::strang;
  CHECK_THROWS_AS(run_2d(u0, bad), std::invalid_argument);
}
