#include <cmath>
#include <functional>

#include "acfilter/ground_state.hpp"
#include "doctest.h"

using namespace acfilter;

namespace {

// Quarter-period integral after u = N sin(theta); smooth on [0, pi/2].
double g_integrand(double n, double theta) {
  const double s = std::sin(theta);
  return 1.0 / std::sqrt(2.0 - n * n - n * n * s * s);
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) {
    return left + right + (left + right - whole) / 15;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 50);
}

double g_oracle(double n) {
  return adaptive_simpson([n](double t) { return g_integrand(n, t); }, 0.0, kPi / 2, 1e-14);
}

// N_kappa by bisection on the closed-form elliptic integral.
double n_oracle(double kappa) {
  const double target = kPi / (2 * std::sqrt(2.0) * kappa);
  auto g = [](double n) {
    const double d = 2.0 - n * n;
    return std::comp_ellint_1(n / std::sqrt(d)) / std::sqrt(d);
  };
  double lo = 0.0;
  double hi = 1.0 - 1e-15;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("g at zero") {
  CHECK(std::abs(g_of_N(0.0) - kPi / (2 * std::sqrt(2.0))) <= 1e-10);
}

TEST_CASE("g against independent quadrature") {
  for (double n : {0.1, 0.5, 0.9, 0.99}) {
    CHECK(g_of_N(n) == doctest::Approx(g_oracle(n)).epsilon(1e-12));
    const double d = 2.0 - n * n;
    CHECK(g_of_N(n) == doctest::Approx(std::comp_ellint_1(n / std::sqrt(d)) / std::sqrt(d)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(g_of_N(1.0), std::invalid_argument);
  CHECK_THROWS_AS(g_of_N(-0.1), std::invalid_argument);
}

TEST_CASE("peak value N_kappa") {
  CHECK(std::abs(solve_n_peak(0.9) - n_oracle(0.9)) <= 1e-10);
  CHECK(std::abs(solve_n_peak(0.5) - n_oracle(0.5)) <= 1e-10);
  CHECK(solve_n_peak(0.9999) <= 0.05);
  CHECK(solve_n_peak(0.3) > solve_n_peak(0.6));
  CHECK(solve_n_peak(0.05) > 0.999999);
  CHECK_THROWS_AS(solve_n_peak(1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_n_peak(0.0), std::invalid_argument);
  CHECK_THROWS_AS(GroundState(1.2), std::invalid_argument);
}

TEST_CASE("ground state energy") {
  const double slope = GroundState(0.01).energy0() / 0.01;
  CHECK(slope == doctest::Approx(4 * std::sqrt(2.0) / 3).epsilon(0.01));
  CHECK(GroundState(0.3).energy0() < GroundState(0.6).energy0());
  const double e = GroundState(0.999).energy0();
  CHECK(e > 1.50);
  CHECK(e < kPi / 2);
  for (double kappa : {0.2, 0.5, 0.9}) {
    const GroundState gs(kappa);
    CHECK(ground_energy(gs) == doctest::Approx(ground_energy_spectral(gs, 1024)).epsilon(1e-8));
    CHECK(gs.energy0() == doctest::Approx(energy(gs.sample(PeriodicGrid1D(1024)), kappa).total).epsilon(1e-8));
  }
}

TEST_CASE("number of admissible rescalings") {
  CHECK(m_kappa(0.9) == 1);
  CHECK(m_kappa(0.5) == 1);
  CHECK(m_kappa(0.45) == 2);
  CHECK(m_kappa(0.3) == 3);
  CHECK(m_kappa(0.1) == 9);
  CHECK_THROWS_AS(m_kappa(1.0), std::invalid_argument);
}

TEST_CASE("ground state profile") {
  const GroundState gs(0.9);
  CHECK(gs.x_of_theta(kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-10));
  CHECK(gs(0.0) == 0.0);
  CHECK(gs(kPi / 2) == doctest::Approx(gs.n_peak()).epsilon(1e-12));
  CHECK(gs(-1.0) == doctest::Approx(-gs(1.0)).epsilon(1e-14));
  CHECK(gs(kPi - 0.3) == doctest::Approx(gs(0.3)).epsilon(1e-12));
  CHECK(residual(gs.sample(PeriodicGrid1D(256)), 0.9) <= 1e-6);
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = gs(kPi / 2 * i / 100);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("tanh envelope for small kappa") {
  const double kappa = 0.05;
  const GroundState gs(kappa);
  double lo = 1.0;
  double hi = -1.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = kPi / 2 * i / 2000;
    const double d = std::tanh(x / (std::sqrt(2.0) * kappa)) - gs(x);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 1e-3);
}

TEST_CASE("ground states are ordered in kappa") {
  const GroundState a(0.4);
  const GroundState b(0.7);
  for (int i = 1; i <= 200; ++i) {
    const double x = kPi / 2 * i / 200;
    CHECK(a(x) > b(x));
  }
}
