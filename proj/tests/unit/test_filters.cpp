#include <cmath>
#include <limits>
#include <random>

#include "acfilter/filters.hpp"
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

SpectralField2D random_field_2d(const PeriodicGrid2D& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(grid.size());
  for (auto& x : v) x = d(rng);
  return SpectralField2D::from_values(grid, std::move(v));
}

bool same_bits(std::span<const double> a, std::span<const double> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

double max_diff_2d(const SpectralField2D& a, const SpectralField2D& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST_CASE("filter spec parsing") {
  CHECK(FilterSpec::parse("none") == FilterSpec::none());
  CHECK(FilterSpec::parse("odd") == FilterSpec::odd());
  CHECK(FilterSpec::parse("gap:3") == FilterSpec::spectral_gap(3));
  CHECK(FilterSpec::parse("sym2d") == FilterSpec::sym2d());
  CHECK(FilterSpec::parse("gap:4").to_string() == "gap:4");
  CHECK_THROWS_AS(FilterSpec::parse("gap:0"), std::invalid_argument);
  CHECK_THROWS_AS(FilterSpec::parse("gap:x"), std::invalid_argument);
  CHECK_THROWS_AS(FilterSpec::parse("even"), std::invalid_argument);
}

TEST_CASE("odd filter examples") {
  const PeriodicGrid1D g(64);
  const auto s = SpectralField1D::sample(g, [](double x) { return std::sin(x); });
  CHECK(max_abs_difference(odd_filter_1d(s), s) < 1e-15);
  const auto c = SpectralField1D::sample(g, [](double x) { return std::cos(x); });
  CHECK(odd_filter_1d(c).max_abs() < 1e-15);
  const auto mixed = SpectralField1D::sample(
      g, [](double x) { return 0.1 + std::sin(2 * x) + 0.3 * std::cos(5 * x); });
  const auto s2 = SpectralField1D::sample(g, [](double x) { return std::sin(2 * x); });
  CHECK(max_abs_difference(odd_filter_1d(mixed), s2) < 1e-15);
}

TEST_CASE("gap filter examples") {
  const PeriodicGrid1D g(64);
  const auto s2 = SpectralField1D::sample(g, [](double x) { return std::sin(2 * x); });
  CHECK(max_abs_difference(gap_filter_1d(s2, 2), s2) < 1e-15);
  const auto s23 = SpectralField1D::sample(g, [](double x) { return std::sin(2 * x) + 0.5 * std::sin(3 * x); });
  CHECK(max_abs_difference(gap_filter_1d(s23, 2), s2) < 1e-15);
  const auto c4 = SpectralField1D::sample(g, [](double x) { return std::cos(4 * x); });
  CHECK(gap_filter_1d(c4, 2).max_abs() < 1e-15);
  CHECK_THROWS_AS(gap_filter_1d(s2, 0), std::invalid_argument);
}

TEST_CASE("filter algebra on random fields") {
  const PeriodicGrid1D g(128);
  const auto u = random_field(g, 1);
  const auto v = random_field(g, 2);

  SUBCASE("idempotent bit for bit") {
    const auto once = odd_filter_1d(u);
    CHECK(same_bits(odd_filter_1d(once).values(), once.values()));
    const auto gap_once = gap_filter_1d(u, 3);
    CHECK(same_bits(gap_filter_1d(gap_once, 3).values(), gap_once.values()));
  }
  SUBCASE("gap 1 is the odd filter") {
    CHECK(same_bits(gap_filter_1d(u, 1).values(), odd_filter_1d(u).values()));
  }
  SUBCASE("linear") {
    const double a = 0.7;
    const double b = -1.3;
    const auto lhs = odd_filter_1d(combine(a, u, b, v));
    const auto rhs = combine(a, odd_filter_1d(u), b, odd_filter_1d(v));
    CHECK(max_abs_difference(lhs, rhs) < 1e-14);
    const auto lg = gap_filter_1d(combine(a, u, b, v), 2);
    const auto rg = combine(a, gap_filter_1d(u, 2), b, gap_filter_1d(v, 2));
    CHECK(max_abs_difference(lg, rg) < 1e-14);
  }
  SUBCASE("contractive") {
    CHECK(l2_norm(odd_filter_1d(u)) <= l2_norm(u));
    CHECK(l2_norm(gap_filter_1d(u, 4)) <= l2_norm(odd_filter_1d(u)));
  }
  SUBCASE("exact grid parity") {
    for (unsigned seed = 0; seed < 20; ++seed) {
      const auto f = odd_filter_1d(random_field(g, 100 + seed));
      CHECK(parity_defect(f) <= 10 * kEps * f.max_abs());
      CHECK(std::abs(f.value(0)) <= 10 * kEps * f.max_abs());
      CHECK(std::abs(f.value(g.origin())) <= 10 * kEps * f.max_abs());
    }
  }
  SUBCASE("coefficient conditions") {
    const auto f = odd_filter_1d(u);
    CHECK(f.coeff(0) == 0.0);
    CHECK(f.coeff(-64) == 0.0);
    for (int k = 1; k < 64; ++k) CHECK(f.coeff(k).real() == 0.0);
    const auto gf = gap_filter_1d(u, 3);
    for (int k = 1; k < 64; ++k) {
      if (k % 3 != 0) CHECK(gf.coeff(k) == 0.0);
    }
  }
}

TEST_CASE("apply_filter dispatch") {
  const PeriodicGrid1D g(32);
  const auto u = random_field(g, 5);
  CHECK(same_bits(apply_filter(FilterSpec::none(), u).values(), u.values()));
  CHECK(same_bits(apply_filter(FilterSpec::odd(), u).values(), odd_filter_1d(u).values()));
  CHECK(same_bits(apply_filter(FilterSpec::spectral_gap(2), u).values(), gap_filter_1d(u, 2).values()));
  CHECK_THROWS_AS(apply_filter(FilterSpec::sym2d(), u), std::invalid_argument);
}

TEST_CASE("2D symmetry filter examples") {
  const PeriodicGrid2D g(32, 16);
  const auto ss = SpectralField2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK(max_diff_2d(sym_filter_2d(ss), ss) < 1e-15);
  const auto cs = SpectralField2D::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  CHECK(sym_filter_2d(cs).max_abs() < 1e-15);
  const auto c = SpectralField2D::sample(g, [](double, double) { return 0.7; });
  CHECK(sym_filter_2d(c).max_abs() < 1e-15);
}

TEST_CASE("2D symmetry filter properties") {
  const PeriodicGrid2D g(32, 32);
  const auto u = random_field_2d(g, 9);
  const auto f = sym_filter_2d(u);
  CHECK(std::equal(f.values().begin(), f.values().end(), sym_filter_2d(f).values().begin()));
  const double tol = 10 * kEps * f.max_abs();
  double dx = 0.0;
  double dy = 0.0;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      dx = std::max(dx, std::abs(f.value(i, j) + f.value((32 - i) % 32, j)));
      dy = std::max(dy, std::abs(f.value(i, j) + f.value(i, (32 - j) % 32)));
    }
  }
  CHECK(dx <= tol);
  CHECK(dy <= tol);
  // support inside the sine-sine cone
  for (int k1 = -16; k1 < 16; ++k1) {
    for (int k2 = -16; k2 < 16; ++k2) {
      const Complex c = f.coeff(k1, k2);
      CHECK(c.imag() == 0.0);
      if (k1 == 0 || k2 == 0 || k1 == -16 || k2 == -16) CHECK(c == 0.0);
      if (k1 > -16) CHECK(std::abs(c + f.coeff(-k1, k2)) < 1e-16);
    }
  }
}

TEST_CASE("2D filter on separable input is the tensor product of odd filters") {
  const int n = 32;
  const PeriodicGrid2D g(n, n);
  const PeriodicGrid1D g1(n);
  const auto a = random_field(g1, 21);
  const auto b = random_field(g1, 22);
  std::vector<double> vals(g.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) vals[g.index(i, j)] = a.value(i) * b.value(j);
  }
  const auto f = sym_filter_2d(SpectralField2D::from_values(g, vals));
  const auto fa = odd_filter_1d(a);
  const auto fb = odd_filter_1d(b);
  double diff = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(f.value(i, j) - fa.value(i) * fb.value(j)));
  }
  CHECK(diff < 1e-14);
}
