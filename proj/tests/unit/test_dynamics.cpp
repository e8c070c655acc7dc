#include <cmath>
#include <limits>

#include "acfilter/dynamics.hpp"
#include "acfilter/ground_state.hpp"
#include "doctest.h"

using namespace acfilter;

namespace {

RunConfig short_run(double kappa, FilterSpec filter, double t_max) {
  RunConfig cfg;
  cfg.scheme = {Scheme::imex1, 0.01, kappa};
  cfg.filter = filter;
  cfg.t_max = t_max;
  cfg.record_every = 10;
  return cfg;
}

}  // namespace

TEST_CASE("noise parity parsing") {
  CHECK(parse_noise_parity("odd") == NoiseParity::odd);
  CHECK(parse_noise_parity("even") == NoiseParity::even);
  CHECK(parse_noise_parity("unconstrained") == NoiseParity::unconstrained);
  CHECK(to_string(NoiseParity::odd) == "odd");
  CHECK_THROWS_AS(parse_noise_parity("both"), std::invalid_argument);
}

TEST_CASE("perturbation config validation") {
  PerturbationConfig p;
  CHECK_NOTHROW(p.validate());
  p.eps_star = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.band_lo = 5;
  p.band_hi = 2;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  RunConfig cfg;
  cfg.filter = FilterSpec::sym2d();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("noise has the requested H1 size and parity") {
  const PeriodicGrid1D g(128);
  for (NoiseParity parity : {NoiseParity::odd, NoiseParity::even, NoiseParity::unconstrained}) {
    PerturbationConfig p;
    p.eps_star = 1e-12;
    p.parity = parity;
    p.band_lo = 1;
    p.band_hi = 8;
    NoiseSource src(g, p);
    for (int i = 0; i < 5; ++i) {
      const auto eta = SpectralField1D::from_coeffs(g, src.next());
      CHECK(h1_norm(eta) == doctest::Approx(1e-12).epsilon(1e-10));
      if (parity == NoiseParity::odd) CHECK(parity_defect(eta) <= 1e-27);
      if (parity == NoiseParity::even) {
        double d = 0.0;
        for (int j = 0; j < g.size(); ++j) d = std::max(d, std::abs(eta.value(j) - eta.value(g.mirror(j))));
        CHECK(d <= 1e-27);
      }
    }
  }
}

TEST_CASE("noise is seeded") {
  const PeriodicGrid1D g(64);
  PerturbationConfig p;
  NoiseSource a(g, p);
  NoiseSource b(g, p);
  CHECK(a.next() == b.next());
  p.seed = 99;
  NoiseSource c(g, p);
  CHECK(a.next() != c.next());
}

TEST_CASE("runs are deterministic") {
  const PeriodicGrid1D g(64);
  auto cfg = short_run(0.9, FilterSpec::none(), 5.0);
  cfg.perturbation = PerturbationConfig{};
  const auto u0 = make_initial(g, "sin");
  const auto a = run(u0, cfg);
  const auto b = run(u0, cfg);
  CHECK(a.energies == b.energies);
  CHECK(a.max_abs == b.max_abs);
  CHECK(a.steps == b.steps);
  CHECK(std::equal(a.final_state->values().begin(), a.final_state->values().end(),
                   b.final_state->values().begin()));
}

TEST_CASE("run record layout") {
  const PeriodicGrid1D g(64);
  const auto rec = run(make_initial(g, "sin"), short_run(0.9, FilterSpec::odd(), 2.0));
  REQUIRE(rec.size() >= 2);
  CHECK(rec.times.front() == 0.0);
  CHECK(std::isnan(rec.residuals.front()));
  for (std::size_t i = 1; i < rec.size(); ++i) CHECK(rec.times[i] > rec.times[i - 1]);
  CHECK(rec.energies.size() == rec.size());
  CHECK(rec.parity_defects.size() == rec.size());
  CHECK(rec.stop_reason == StopReason::t_max_reached);
  CHECK(rec.steps == 200);
  CHECK(rec.final_time == doctest::Approx(2.0));
  CHECK(rec.times.back() == doctest::Approx(2.0));
}

TEST_CASE("filtered runs keep exact parity and dissipate energy") {
  const PeriodicGrid1D g(128);
  auto cfg = short_run(0.9, FilterSpec::odd(), 20.0);
  cfg.record_every = 1;
  const auto rec = run(make_initial(g, "sin"), cfg);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    CHECK(rec.parity_defects[i] <= 1e-12 * rec.max_abs[i]);
    if (i > 0) CHECK(rec.energies[i] <= rec.energies[i - 1] + 1e-13);
  }
}

TEST_CASE("filtered run converges to the ground state") {
  const PeriodicGrid1D g(128);
  auto cfg = short_run(0.9, FilterSpec::odd(), 1e5);
  cfg.tol = 1e-10;
  const auto rec = run(make_initial(g, "sin"), cfg);
  CHECK(rec.stop_reason == StopReason::tol_reached);
  CHECK(max_abs_difference(*rec.final_state, GroundState(0.9).sample(g)) <= 1e-7);
}

TEST_CASE("theorem checks on a small run") {
  const PeriodicGrid1D g(64);
  auto cfg = short_run(0.9, FilterSpec::odd(), 5.0);
  cfg.scheme.tau = 0.1;
  cfg.theorem_checks = true;
  PerturbationConfig p;
  p.parity = NoiseParity::odd;
  p.eps_star = 1e-12;
  p.band_lo = 1;
  cfg.perturbation = p;
  const auto rec = run(make_initial(g, "sin:1:0.5"), cfg);
  CHECK(rec.theorem.steps == 50);
  CHECK(rec.theorem.inequality_checked > 0);
  CHECK(rec.theorem.inequality_violations == 0);
  CHECK(rec.theorem.sup_norm_u <= 1.1);
}

TEST_CASE("scheme errors stop the run") {
  const PeriodicGrid1D g(16);
  std::vector<double> v(16, 0.0);
  v[2] = std::numeric_limits<double>::infinity();
  const auto rec = run(SpectralField1D::from_values(g, v), short_run(0.9, FilterSpec::none(), 1.0));
  CHECK(rec.stop_reason == StopReason::scheme_error);
  CHECK_FALSE(rec.error_message.empty());
  CHECK(to_string(StopReason::scheme_error) == "scheme_error");
}

TEST_CASE("initial condition grammar") {
  const PeriodicGrid1D g(64);
  CHECK(make_initial(g, "sin").value(48) == doctest::Approx(1.0));
  CHECK(make_initial(g, "sin:3").max_abs() == doctest::Approx(1.0));
  CHECK(make_initial(g, "sin:2:0.25").max_abs() == doctest::Approx(0.25));
  const auto mix = make_initial(g, "mix:1,2");
  const double x = g.node(40);
  CHECK(mix.value(40) == doctest::Approx(0.5 * (std::sin(x) + std::sin(2 * x))));
  CHECK_THROWS_AS(make_initial(g, "cos"), std::invalid_argument);
  CHECK_THROWS_AS(make_initial(g, "sin:x"), std::invalid_argument);
  CHECK_THROWS_AS(make_initial(g, "mix:"), std::invalid_argument);
}

TEST_CASE("sweep rows") {
  const PeriodicGrid1D g(64);
  auto cfg = short_run(0.9, FilterSpec::odd(), 1e4);
  cfg.tol = 1e-9;
  const auto rows = sweep_kappa({0.9, 1.2, -1.0}, cfg, make_initial(g, "sin"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].verdict.starts_with("ground(j=1,"));
  CHECK(rows[0].max_abs_final == doctest::Approx(solve_n_peak(0.9)).epsilon(1e-6));
  CHECK(rows[1].verdict == "zero");
  CHECK(rows[2].verdict == "error");
  CHECK_FALSE(rows[2].error.empty());
}

TEST_CASE("amplification demo") {
  const auto t = amplification_demo(1e-15, 35.0, 3500);
  CHECK(t.exact == doctest::Approx(1.5860).epsilon(1e-3));
  CHECK(t.times.size() == 3501);
  CHECK(t.euler.front() == 1e-15);
  CHECK(t.euler.back() == doctest::Approx(1e-15 * std::pow(1.01, 3500)).epsilon(1e-12));
  CHECK(t.euler.back() < t.exact);
  CHECK(amplification_demo(0.0, 35.0).exact == 0.0);
}
