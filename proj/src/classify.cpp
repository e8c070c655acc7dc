#include "acfilter/classify.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "acfilter/ground_state.hpp"

namespace acfilter {

std::string Classification::to_string() const {
  switch (verdict) {
    case Verdict::zero: return "zero";
    case Verdict::plus_one: return "plus_one";
    case Verdict::minus_one: return "minus_one";
    case Verdict::ground: {
      std::ostringstream out;
      out.precision(6);
      out << "ground(j=" << j << ",sign=" << (sign > 0 ? "+" : "-") << ",c=" << shift << ")";
      return out.str();
    }
  }
  return "zero";
}

namespace {

// Correlation C(d) = int u(x) w(x + d) dx and its first two derivatives in d,
// from p_k = conj(u_k) w_k; the Nyquist mode is dropped for non-grid shifts.
struct Correlation {
  std::span<const Complex> p;

  std::array<double, 3> at(double d) const {
    const int top = static_cast<int>(p.size()) - 1;
    double c0 = p[0].real();
    double c1 = 0.0;
    double c2 = 0.0;
    for (int k = 1; k < top; ++k) {
      const Complex e = p[k] * std::polar(1.0, k * d);
      c0 += 2.0 * e.real();
      c1 -= 2.0 * k * e.imag();
      c2 -= 2.0 * static_cast<double>(k) * k * e.real();
    }
    return {2.0 * kPi * c0, 2.0 * kPi * c1, 2.0 * kPi * c2};
  }
};

struct Match {
  double shift_x = 0.0;  // d, in x units
  int sign = 1;
  double mismatch = std::numeric_limits<double>::infinity();
};

Match best_shift(const SpectralField1D& u, const SpectralField1D& w) {
  const auto& grid = u.grid();
  const int n = grid.size();
  std::vector<Complex> p(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) p[k] = std::conj(u.half_coeffs()[k]) * w.half_coeffs()[k];

  // Coarse search: the synthesis at node x_m is sum_k p_k exp(i k x_m) = C(x_m) / (2 pi).
  const auto coarse = inverse_transform(grid, p);
  int best = 0;
  for (int m = 1; m < n; ++m) {
    if (std::abs(coarse[m]) > std::abs(coarse[best])) best = m;
  }
  const double h = grid.spacing();
  const double ym = std::abs(coarse[(best + n - 1) % n]);
  const double y0 = std::abs(coarse[best]);
  const double yp = std::abs(coarse[(best + 1) % n]);
  double d = grid.node(best);
  const double curv = ym - 2.0 * y0 + yp;
  if (curv < 0.0) d += h * 0.5 * (ym - yp) / curv;

  const Correlation corr{p};
  const int sign = coarse[best] >= 0.0 ? 1 : -1;
  // Newton polish on s*C'(d) = 0; keep the step only while it stays near the peak.
  for (int iter = 0; iter < 8; ++iter) {
    const auto c = corr.at(d);
    if (sign * c[2] >= 0.0) break;
    const double step = -c[1] / c[2];
    if (std::abs(step) > h) break;
    d += step;
    if (std::abs(step) < 1e-14) break;
  }

  Match m;
  m.shift_x = d;
  m.sign = sign;
  double s = 0.0;
  for (int k = 0; k <= n / 2; ++k) {
    const double weight = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    const Complex shifted = k == n / 2 ? w.half_coeffs()[k] * std::cos(k * d)
                                       : w.half_coeffs()[k] * std::polar(1.0, k * d);
    s += weight * std::norm(u.half_coeffs()[k] - static_cast<double>(sign) * shifted);
  }
  m.mismatch = std::sqrt(2.0 * kPi * s);
  return m;
}

}  // namespace

Classification classify_steady(const SpectralField1D& u, double kappa, ClassifyOptions opts) {
  if (!(kappa > 0.0)) throw std::invalid_argument("classify_steady: kappa must be > 0");
  const double res = residual(u, kappa);
  if (res > opts.residual_limit) {
    std::ostringstream msg;
    msg << "classify_steady: field is not near-steady (residual " << res << " > "
        << opts.residual_limit << ")";
    throw std::invalid_argument(msg.str());
  }

  using V = Classification::Verdict;
  const std::pair<double, V> constants[] = {{0.0, V::zero}, {1.0, V::plus_one}, {-1.0, V::minus_one}};
  for (const auto& [level, verdict] : constants) {
    const double dist = l2_distance(u, SpectralField1D::constant(u.grid(), level));
    if (dist <= opts.constant_tol) {
      Classification c;
      c.verdict = verdict;
      c.match_error = dist;
      return c;
    }
  }
  if (kappa >= 1.0) {
    throw ClassificationError(
        "classify_steady: kappa >= 1 admits only 0 and +-1, but u is not close to any of them");
  }

  Classification best;
  best.verdict = V::ground;
  best.match_error = std::numeric_limits<double>::infinity();
  const int m = m_kappa(kappa);
  for (int j = 1; j <= m; ++j) {
    const GroundState gs(j * kappa);
    const auto w = SpectralField1D::sample(u.grid(), [&gs, j](double x) { return gs(j * x); });
    const Match match = best_shift(u, w);
    if (match.mismatch < best.match_error) {
      double c = std::remainder(j * match.shift_x, 2.0 * kPi);
      int sign = match.sign;
      if (c >= 0.5 * kPi) {
        c -= kPi;
        sign = -sign;
      } else if (c < -0.5 * kPi) {
        c += kPi;
        sign = -sign;
      }
      best.j = j;
      best.sign = sign;
      best.shift = c;
      best.match_error = match.mismatch;
    }
  }
  if (!(best.match_error <= opts.mismatch_limit)) {
    std::ostringstream msg;
    msg << "classify_steady: unclassified, best candidate j=" << best.j << " has L2 mismatch "
        << best.match_error << " > " << opts.mismatch_limit;
    throw ClassificationError(msg.str());
  }
  return best;
}

}  // namespace acfilter
