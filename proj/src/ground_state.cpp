#include "acfilter/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace acfilter {

namespace {

constexpr double kPanelWidth = 0.5;
constexpr double kMinGap = 1e-300;

void require_subcritical(double kappa, const char* who) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    std::ostringstream msg;
    msg << who << ": kappa must lie in (0, 1), got " << kappa;
    throw std::invalid_argument(msg.str());
  }
}

double target_of(double kappa) { return kPi / (2.0 * std::sqrt(2.0) * kappa); }

}  // namespace

PeakIntegral::PeakIntegral(double gap) : gap_(gap) {
  if (!(gap > 0.0 && gap <= 1.0)) throw std::invalid_argument("PeakIntegral: gap must be in (0, 1]");
  scale_ = std::sqrt(2.0 * gap);
  t_max_ = std::asinh(0.5 * kPi / scale_);
  const int panels = std::max(2, static_cast<int>(std::ceil(t_max_ / kPanelWidth)));
  breaks_.resize(panels + 1);
  for (int p = 0; p <= panels; ++p) breaks_[p] = t_max_ * p / panels;
  breaks_.back() = t_max_;
  cumulative_.assign(panels + 1, 0.0);
  const auto& rule = gauss_legendre_20();
  for (int p = 0; p < panels; ++p) {
    cumulative_[p + 1] =
        cumulative_[p] + rule.integrate([this](double t) { return integrand(t); }, breaks_[p],
                                        breaks_[p + 1]);
  }
}

double PeakIntegral::psi(double t) const { return std::min(scale_ * std::sinh(t), 0.5 * kPi); }

double PeakIntegral::t_of_psi(double psi) const { return std::asinh(psi / scale_); }

double PeakIntegral::integrand(double t) const {
  const double p = scale_ * std::sinh(t);
  const double s = std::sin(p);
  const double c = std::cos(p);
  return scale_ * std::cosh(t) / std::sqrt(s * s + gap_ * (1.0 + c * c));
}

double PeakIntegral::partial(double t) const {
  t = std::clamp(t, 0.0, t_max_);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto p = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - breaks_.begin() - 1));
  if (p + 1 >= breaks_.size()) return cumulative_.back();
  const double a = breaks_[p];
  if (t == a) return cumulative_[p];
  return cumulative_[p] +
         gauss_legendre_20().integrate([this](double u) { return integrand(u); }, a, t);
}

double PeakIntegral::invert(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= total()) return t_max_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const auto p = static_cast<std::size_t>(it - cumulative_.begin() - 1);
  double lo = breaks_[p];
  double hi = breaks_[p + 1];
  const double frac = (s - cumulative_[p]) / (cumulative_[p + 1] - cumulative_[p]);
  double t = lo + frac * (hi - lo);
  for (int iter = 0; iter < 60; ++iter) {
    const double f = partial(t) - s;
    if (f > 0.0) hi = t; else lo = t;
    double next = t - f / integrand(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) {
      return next;
    }
    t = next;
  }
  return t;
}

double PeakIntegral::derivative() const {
  // d/dgap of the psi integrand is -(1 + cos^2)/2 * D^{-3/2}
  return weighted([this](double p) {
    const double s = std::sin(p);
    const double c = std::cos(p);
    const double d = s * s + gap_ * (1.0 + c * c);
    return -0.5 * (1.0 + c * c) / d;
  });
}

double g_of_gap(double gap) { return PeakIntegral(gap).total(); }

double g_of_N(double n_peak) {
  if (!(n_peak >= 0.0 && n_peak < 1.0)) {
    throw std::invalid_argument("g_of_N: N must lie in [0, 1)");
  }
  return g_of_gap((1.0 - n_peak) * (1.0 + n_peak));
}

double solve_gap(double kappa) {
  require_subcritical(kappa, "solve_gap");
  const double target = target_of(kappa);
  // f(lambda) = g(exp(lambda)) - target is decreasing in lambda = ln(gap).
  double lo = std::log(kMinGap);
  double hi = 0.0;
  const double f_hi = g_of_gap(1.0) - target;
  if (f_hi >= 0.0) return 1.0;
  if (g_of_gap(kMinGap) - target <= 0.0) {
    std::ostringstream msg;
    msg << "solve_gap: kappa = " << kappa << " is too small (1 - N^2 underflows)";
    throw std::domain_error(msg.str());
  }
  const double tol = 1e-13 * std::max(1.0, target);
  // Small-gap asymptotics g ~ ln(pi / a) with a = sqrt(2 gap).
  double lambda = std::clamp(std::log(0.5 * kPi * kPi) - 2.0 * target, lo + 1.0, -1e-3);
  for (int iter = 0; iter < 200; ++iter) {
    const PeakIntegral integral(std::exp(lambda));
    const double f = integral.total() - target;
    if (std::abs(f) <= tol) return integral.gap();
    if (f > 0.0) lo = lambda; else hi = lambda;
    const double slope = integral.gap() * integral.derivative();
    double next = lambda - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15) return std::exp(next);
    lambda = next;
  }
  throw std::runtime_error("solve_gap: no convergence");
}

double solve_n_peak(double kappa) { return std::sqrt(1.0 - solve_gap(kappa)); }

int m_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("m_kappa: kappa must be in (0,1)");
  int m = std::max(1, static_cast<int>(std::floor(1.0 / kappa)));
  while (m > 1 && kappa >= 1.0 / m) --m;
  while (1.0 / (m + 1) > kappa) ++m;
  return m;
}

GroundState::GroundState(double kappa)
    : kappa_((require_subcritical(kappa, "GroundState"), kappa)),
      integral_(solve_gap(kappa)),
      n_peak_(std::sqrt(1.0 - integral_.gap())),
      energy0_(0.0) {
  const double d = integral_.gap();
  energy0_ = 4.0 * std::sqrt(2.0) * kappa_ * integral_.weighted([d](double p) {
    const double s = std::sin(p);
    const double c = std::cos(p);
    const double one_minus_u2 = s * s + d * c * c;
    return 0.5 * one_minus_u2 * one_minus_u2 - 0.25 * d * d;
  });
  // gap cosh^2 s <= 1/2 keeps the kink integrand within [1, sqrt 2]
  if (2.0 * d < 1.0) {
    const double s_lim = std::acosh(std::sqrt(0.5 / d));
    const int panels = std::max(1, static_cast<int>(std::ceil(s_lim / kPanelWidth)));
    kink_breaks_.resize(panels + 1);
    kink_cumulative_.assign(panels + 1, 0.0);
    for (int p = 0; p <= panels; ++p) kink_breaks_[p] = s_lim * p / panels;
    kink_breaks_.back() = s_lim;
    const auto& rule = gauss_legendre_20();
    for (int p = 0; p < panels; ++p) {
      kink_cumulative_[p + 1] =
          kink_cumulative_[p] + rule.integrate([this](double r) { return kink_integrand(r); },
                                               kink_breaks_[p], kink_breaks_[p + 1]);
    }
    kink_x_limit_ = std::sqrt(2.0) * kappa_ * kink_cumulative_.back();
  }
  constexpr int kSamples = 129;
  theta_nodes_.resize(kSamples);
  x_nodes_.resize(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    theta_nodes_[i] = 0.5 * kPi * i / (kSamples - 1);
    x_nodes_[i] = x_of_theta(theta_nodes_[i]);
  }
}

double GroundState::x_of_theta(double theta) const {
  theta = std::clamp(theta, 0.0, 0.5 * kPi);
  const double t = integral_.t_of_psi(0.5 * kPi - theta);
  return std::sqrt(2.0) * kappa_ * (integral_.total() - integral_.partial(t));
}

double GroundState::psi_at(double x_quarter) const {
  // x = pi/2 - sqrt(2) kappa G(t), psi = a sinh t
  const double s = (0.5 * kPi - x_quarter) / (std::sqrt(2.0) * kappa_);
  if (s >= integral_.total()) return 0.5 * kPi;
  return integral_.psi(integral_.invert(s));
}

double GroundState::kink_integrand(double s) const {
  const double c = std::cosh(s);
  const double q = integral_.gap() * c * c;
  return 1.0 / std::sqrt((1.0 - q) * (1.0 + q));
}

double GroundState::kink_partial(double s) const {
  auto it = std::upper_bound(kink_breaks_.begin(), kink_breaks_.end(), s);
  const auto p = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - kink_breaks_.begin() - 1));
  if (p + 1 >= kink_breaks_.size()) return kink_cumulative_.back();
  return kink_cumulative_[p] + gauss_legendre_20().integrate(
                                   [this](double r) { return kink_integrand(r); }, kink_breaks_[p], s);
}

double GroundState::kink_s_of_x(double x_quarter) const {
  const double target = x_quarter / (std::sqrt(2.0) * kappa_);
  double lo = 0.0;
  double hi = kink_breaks_.back();
  double s = std::min(target, hi);  // the integrand is >= 1, so s <= target
  for (int iter = 0; iter < 60; ++iter) {
    const double f = kink_partial(s) - target;
    if (f > 0.0) hi = s; else lo = s;
    double next = s - f / kink_integrand(s);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1e-300, s)) {
      return next;
    }
    s = next;
  }
  return s;
}

namespace {

// Reduces x to [0, pi/2] using 2 pi periodicity, oddness and U(pi - x) = U(x).
// Returns the sign to apply.
double reduce(double& x) {
  x = std::remainder(x, 2.0 * kPi);  // [-pi, pi]
  double sign = 1.0;
  if (x < 0.0) {
    x = -x;
    sign = -1.0;
  }
  if (x > 0.5 * kPi) x = kPi - x;
  return sign;
}

}  // namespace

double GroundState::operator()(double x) const {
  const double sign = reduce(x);
  if (x <= 0.0) return 0.0;
  if (x <= kink_x_limit_) return sign * std::tanh(kink_s_of_x(x));
  return sign * n_peak_ * std::cos(psi_at(x));
}

double GroundState::one_minus_square(double x) const {
  reduce(x);
  if (x <= 0.0) return 1.0;
  if (x <= kink_x_limit_) {
    const double c = std::cosh(kink_s_of_x(x));
    return 1.0 / (c * c);
  }
  const double p = psi_at(x);
  const double s = std::sin(p);
  const double c = std::cos(p);
  return s * s + integral_.gap() * c * c;
}

SpectralField1D GroundState::sample(const PeriodicGrid1D& grid) const {
  return SpectralField1D::sample(grid, [this](double x) { return (*this)(x); });
}

double ground_energy(const GroundState& gs) { return gs.energy0(); }

double ground_energy_spectral(const GroundState& gs, int n_modes) {
  const PeriodicGrid1D grid(n_modes);
  return energy(gs.sample(grid), gs.kappa()).total;
}

}  // namespace acfilter
