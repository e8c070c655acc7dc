#include "acfilter/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acfilter {

GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: n must be positive");
  // Newton on P_n from the Chebyshev-like initial guess; nodes are symmetric.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

const GaussLegendre& gauss_legendre_20() {
  static const GaussLegendre rule(20);
  return rule;
}

}  // namespace acfilter
