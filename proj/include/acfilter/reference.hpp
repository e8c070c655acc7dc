#pragma once

// Serial reference implementations. They evaluate the defining sums directly
// (O(N^2) per 1D transform) and share no code with the FFT path, so tests can
// use them as an independent check of the optimized kernels.

#include <span>
#include <vector>

#include "acfilter/fft.hpp"

namespace acfilter::reference {

/// c(k) = (1/N) sum_j u_j exp(-i k x_j), x_j = -pi + 2 pi j / N, k = 0..N/2.
std::vector<Complex> dft(std::span<const double> values);

/// Full-spectrum synthesis sum_{k=-N/2}^{N/2-1} c(k) exp(i k x_j) from the
/// half spectrum (Hermitian extension, real part kept).
std::vector<double> idft(std::span<const Complex> half, int n);

/// Row-major nx-by-ny samples -> nx-by-(ny/2+1) coefficients.
std::vector<Complex> dft2(std::span<const double> values, int nx, int ny);
std::vector<double> idft2(std::span<const Complex> half, int nx, int ny);

/// One first-order IMEX step w = (1 - kappa^2 tau d_xx)^{-1}[u - tau(u^3 - u)],
/// evaluated with the direct DFT and plain loops.
std::vector<double> imex1_step(std::span<const double> u, double kappa, double tau);
std::vector<double> imex1_step_2d(std::span<const double> u, int nx, int ny, double kappa,
                                  double tau);

}  // namespace acfilter::reference
