#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace acfilter {

using Complex = std::complex<double>;

/// Allocator handing out SIMD-aligned storage from fftw_malloc, so that
/// buffers can be passed to plans through the new-array execute interface.
template <typename T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <typename U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  template <typename U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, FftwAllocator<double>>;
using ComplexBuffer = std::vector<Complex, FftwAllocator<Complex>>;

void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* p) noexcept;

template <typename T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  return static_cast<T*>(fftw_aligned_alloc(n * sizeof(T)));
}
template <typename T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_aligned_free(p);
}

// Coefficient convention shared by the 1D and 2D transforms: the grid starts
// at x_0 = -pi, and
//
//   c(k) = (1/N) sum_j u(x_j) exp(-i k x_j),   k = 0..N/2 stored (half spectrum)
//
// which differs from the raw FFT by the factor (-1)^k / N. Negative modes are
// recovered from Hermitian symmetry. The inverse ignores the imaginary parts of
// the k = 0 and k = N/2 entries, and always returns a real field.

/// Real-to-half-complex transform pair for one periodic 1D grid size.
/// Owns its plans and scratch storage; one instance must not be used by two
/// threads at once. Use `fft1d(n)` for a thread-local cached instance.
class Fft1D {
 public:
  explicit Fft1D(int n);
  ~Fft1D();
  Fft1D(const Fft1D&) = delete;
  Fft1D& operator=(const Fft1D&) = delete;

  int size() const { return n_; }
  int half_size() const { return n_ / 2 + 1; }

  void forward(std::span<const double> values, std::span<Complex> half);
  void inverse(std::span<const Complex> half, std::span<double> values);

 private:
  int n_;
  RealBuffer real_;
  ComplexBuffer spec_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// Same contract on an nx-by-ny tensor grid, row-major values (x index
/// outermost). The half spectrum has shape nx by (ny/2+1).
class Fft2D {
 public:
  Fft2D(int nx, int ny);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int half_ny() const { return ny_ / 2 + 1; }

  void forward(std::span<const double> values, std::span<Complex> half);
  void inverse(std::span<const Complex> half, std::span<double> values);

 private:
  int nx_;
  int ny_;
  RealBuffer real_;
  ComplexBuffer spec_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// Thread-local transform objects, created on first use per size.
Fft1D& fft1d(int n);
Fft2D& fft2d(int nx, int ny);

/// Signed wavenumber of half-spectrum row index i on an n-point axis;
/// the Nyquist row maps to -n/2.
inline int signed_mode(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace acfilter
