#include "acfilter/filters.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace acfilter {

FilterSpec FilterSpec::spectral_gap(int l) {
  if (l < 1) throw std::invalid_argument("gap filter needs L >= 1, got " + std::to_string(l));
  return {Kind::gap, l};
}

FilterSpec FilterSpec::parse(std::string_view text) {
  if (text == "none") return none();
  if (text == "odd") return odd();
  if (text == "sym2d") return sym2d();
  if (text.starts_with("gap:")) {
    auto digits = text.substr(4);
    int l = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), l);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("bad gap filter '" + std::string(text) + "'");
    }
    return spectral_gap(l);
  }
  throw std::invalid_argument("unknown filter '" + std::string(text) +
                              "' (expected none, odd, gap:L or sym2d)");
}

std::string FilterSpec::to_string() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::odd_1d: return "odd";
    case Kind::gap: return "gap:" + std::to_string(gap);
    case Kind::sym_2d: return "sym2d";
  }
  return "none";
}

void project_odd(std::span<Complex> half) {
  half.front() = 0.0;
  half.back() = 0.0;
  for (std::size_t k = 1; k + 1 < half.size(); ++k) half[k] = Complex(0.0, half[k].imag());
}

void project_gap(std::span<Complex> half, int gap) {
  project_odd(half);
  for (std::size_t k = 1; k < half.size(); ++k) {
    if (k % static_cast<std::size_t>(gap) != 0) half[k] = 0.0;
  }
}

void project_sym2d(std::span<Complex> half, int nx, int ny) {
  const int hy = ny / 2 + 1;
  auto at = [hy](int i, int j) { return static_cast<std::size_t>(i) * hy + j; };
  auto mirror_row = [nx](int i) { return (nx - i) % nx; };

  // (i) k1 = 0 and k2 = 0 lines
  for (int j = 0; j < hy; ++j) half[at(0, j)] = 0.0;
  for (int i = 0; i < nx; ++i) half[at(i, 0)] = 0.0;
  // (ii) real coefficients only
  for (auto& c : half) c = Complex(c.real(), 0.0);
  // (iii) odd in k1
  std::vector<Complex> prev(half.begin(), half.end());
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < hy; ++j) half[at(i, j)] = 0.5 * (prev[at(i, j)] - prev[at(mirror_row(i), j)]);
  }
  // (iv) odd in k2; c(k1, -k2) = conj c(-k1, k2) for a real field, and the
  // k2 = 0 and Nyquist columns are their own mirror images.
  prev.assign(half.begin(), half.end());
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < hy; ++j) {
      const Complex mirrored =
          (j == 0 || j == ny / 2) ? prev[at(i, j)] : std::conj(prev[at(mirror_row(i), j)]);
      half[at(i, j)] = 0.5 * (prev[at(i, j)] - mirrored);
    }
  }
}

SpectralField1D odd_filter_1d(const SpectralField1D& u) {
  std::vector<Complex> half(u.half_coeffs().begin(), u.half_coeffs().end());
  project_odd(half);
  return SpectralField1D::from_coeffs(u.grid(), std::move(half));
}

SpectralField1D gap_filter_1d(const SpectralField1D& u, int gap) {
  if (gap < 1) throw std::invalid_argument("gap_filter_1d: L must be >= 1");
  std::vector<Complex> half(u.half_coeffs().begin(), u.half_coeffs().end());
  project_gap(half, gap);
  return SpectralField1D::from_coeffs(u.grid(), std::move(half));
}

SpectralField2D sym_filter_2d(const SpectralField2D& u) {
  std::vector<Complex> half(u.half_coeffs().begin(), u.half_coeffs().end());
  project_sym2d(half, u.grid().nx(), u.grid().ny());
  return SpectralField2D::from_coeffs(u.grid(), std::move(half));
}

SpectralField1D apply_filter(const FilterSpec& spec, const SpectralField1D& u) {
  switch (spec.kind) {
    case FilterSpec::Kind::none: return u;
    case FilterSpec::Kind::odd_1d: return odd_filter_1d(u);
    case FilterSpec::Kind::gap: return gap_filter_1d(u, spec.gap);
    case FilterSpec::Kind::sym_2d: break;
  }
  throw std::invalid_argument("apply_filter: sym2d is a 2D filter");
}

}  // namespace acfilter
