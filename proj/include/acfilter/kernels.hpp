#pragma once

// Data-parallel inner loops shared by the 1D and 2D steppers. Every kernel is
// pointwise or an order-independent reduction (max), so results do not depend
// on the thread count. Small arrays run serially; the OpenMP fork costs more
// than a 256-point loop.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "acfilter/fft.hpp"

namespace acfilter::kernels {

inline constexpr std::ptrdiff_t kParallelThreshold = 8192;

/// out = u - tau * (u^3 - u), the explicit half of the IMEX step.
inline void imex_explicit_rhs(std::span<const double> u, double tau, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = u[i];
    out[i] = v - tau * (v * v * v - v);
  }
}

/// c[i] *= symbol[i].
inline void scale_by_symbol(std::span<Complex> c, std::span<const double> symbol) {
  const auto n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) c[i] *= symbol[i];
}

/// out[i] = a[i] + b[i].
inline void add(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

inline double max_abs(std::span<const double> u) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(u[i]));
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Pure reaction flow u' = u - u^3 over time tau, applied pointwise.
/// Returns false if some denominator is non-positive.
inline bool reaction_flow(std::span<double> u, double tau) {
  const double decay = std::exp(-2.0 * tau);
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = u[i];
    const double den = v * v + (1.0 - v * v) * decay;
    if (den > 0.0) {
      u[i] = v / std::sqrt(den);
    } else {
      ok = false;
    }
  }
  return ok;
}

}  // namespace acfilter::kernels
