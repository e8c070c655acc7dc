#pragma once

#include <string>
#include <string_view>

#include "acfilter/field2d.hpp"
#include "acfilter/spectral.hpp"

namespace acfilter {

/// Which symmetry-preserving projection to apply after every time step.
struct FilterSpec {
  enum class Kind { none, odd_1d, gap, sym_2d };
  Kind kind = Kind::none;
  int gap = 1;  // spectral gap L, used when kind == gap

  static FilterSpec none() { return {}; }
  static FilterSpec odd() { return {Kind::odd_1d, 1}; }
  static FilterSpec spectral_gap(int l);
  static FilterSpec sym2d() { return {Kind::sym_2d, 1}; }

  /// Parses `none`, `odd`, `gap:L` or `sym2d`.
  static FilterSpec parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const FilterSpec&) const = default;
};

/// Keeps only the sine content: c(0) = 0, c(k) <- i Im c(k), Nyquist dropped.
SpectralField1D odd_filter_1d(const SpectralField1D& u);

/// odd_filter_1d followed by zeroing every mode that is not a multiple of L.
SpectralField1D gap_filter_1d(const SpectralField1D& u, int gap);

/// Projection onto the sin(k1 x) sin(k2 y) cone, in four steps: zero the
/// k1 = 0 and k2 = 0 lines, drop imaginary parts, antisymmetrize in k1, then
/// antisymmetrize in k2.
SpectralField2D sym_filter_2d(const SpectralField2D& u);

/// Applies a 1D filter spec; `sym_2d` is rejected.
SpectralField1D apply_filter(const FilterSpec& spec, const SpectralField1D& u);

// In-place coefficient projections, used by the steppers to avoid an extra
// synthesis between noise injection and filtering.
void project_odd(std::span<Complex> half);
void project_gap(std::span<Complex> half, int gap);
void project_sym2d(std::span<Complex> half, int nx, int ny);

}  // namespace acfilter
