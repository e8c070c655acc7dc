#include "acfilter/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>

namespace acfilter {

namespace {

// The FFTW planner (and plan destruction) is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_size(int n, const char* what) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": grid size must be even and >= 2, got " +
                                std::to_string(n));
  }
}

}  // namespace

void* fftw_aligned_alloc(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void fftw_aligned_free(void* p) noexcept { fftw_free(p); }

Fft1D::Fft1D(int n) : n_(n) {
  check_size(n, "Fft1D");
  real_.resize(n);
  spec_.resize(n / 2 + 1);
  auto* in = real_.data();
  auto* out = reinterpret_cast<fftw_complex*>(spec_.data());
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, out, in, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw std::runtime_error("Fft1D: FFTW planning failed");
  }
}

Fft1D::~Fft1D() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft1D::forward(std::span<const double> values, std::span<Complex> half) {
  if (static_cast<int>(values.size()) != n_ || static_cast<int>(half.size()) != half_size()) {
    throw std::invalid_argument("Fft1D::forward: length mismatch");
  }
  std::copy(values.begin(), values.end(), real_.begin());
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const double scale = 1.0 / n_;
  for (int k = 0; k < half_size(); ++k) {
    half[k] = (k % 2 == 0 ? scale : -scale) * spec_[k];
  }
}

void Fft1D::inverse(std::span<const Complex> half, std::span<double> values) {
  if (static_cast<int>(values.size()) != n_ || static_cast<int>(half.size()) != half_size()) {
    throw std::invalid_argument("Fft1D::inverse: length mismatch");
  }
  for (int k = 0; k < half_size(); ++k) {
    spec_[k] = (k % 2 == 0) ? half[k] : -half[k];
  }
  spec_[0].imag(0.0);
  spec_[n_ / 2].imag(0.0);
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  std::copy(real_.begin(), real_.end(), values.begin());
}

Fft2D::Fft2D(int nx, int ny) : nx_(nx), ny_(ny) {
  check_size(nx, "Fft2D");
  check_size(ny, "Fft2D");
  real_.resize(static_cast<std::size_t>(nx) * ny);
  spec_.resize(static_cast<std::size_t>(nx) * half_ny());
  auto* in = real_.data();
  auto* out = reinterpret_cast<fftw_complex*>(spec_.data());
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_2d(nx, ny, in, out, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_2d(nx, ny, out, in, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw std::runtime_error("Fft2D: FFTW planning failed");
  }
}

Fft2D::~Fft2D() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft2D::forward(std::span<const double> values, std::span<Complex> half) {
  if (values.size() != real_.size() || half.size() != spec_.size()) {
    throw std::invalid_argument("Fft2D::forward: length mismatch");
  }
  std::copy(values.begin(), values.end(), real_.begin());
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const double scale = 1.0 / (static_cast<double>(nx_) * ny_);
  const int hy = half_ny();
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < hy; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * hy + j;
      half[idx] = ((i + j) % 2 == 0 ? scale : -scale) * spec_[idx];
    }
  }
}

void Fft2D::inverse(std::span<const Complex> half, std::span<double> values) {
  if (values.size() != real_.size() || half.size() != spec_.size()) {
    throw std::invalid_argument("Fft2D::inverse: length mismatch");
  }
  const int hy = half_ny();
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < hy; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * hy + j;
      spec_[idx] = ((i + j) % 2 == 0) ? half[idx] : -half[idx];
    }
  }
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  std::copy(real_.begin(), real_.end(), values.begin());
}

Fft1D& fft1d(int n) {
  thread_local std::map<int, std::unique_ptr<Fft1D>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft1D>(n);
  return *slot;
}

Fft2D& fft2d(int nx, int ny) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<Fft2D>> cache;
  auto& slot = cache[{nx, ny}];
  if (!slot) slot = std::make_unique<Fft2D>(nx, ny);
  return *slot;
}

}  // namespace acfilter
