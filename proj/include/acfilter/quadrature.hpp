#pragma once

#include <vector>

namespace acfilter {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);

  /// Integral of f over [a, b] with this rule.
  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(mid + half * nodes[i]);
    return s * half;
  }
};

/// Shared 20-point rule.
const GaussLegendre& gauss_legendre_20();

}  // namespace acfilter
