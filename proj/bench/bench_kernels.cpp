// Compares the serial reference routines with the FFT/OpenMP paths.
//   bench_kernels [reps]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "acfilter/allen_cahn_2d.hpp"
#include "acfilter/reference.hpp"
#include "acfilter/schemes.hpp"

using namespace acfilter;

namespace {

double seconds_per_call(const std::function<void()>& fn, int reps) {
  fn();  // warm-up, plan creation
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* what, int n, double ref, double fast, double diff) {
  std::printf("%-18s %6d  %12.3e  %12.3e  %8.1fx  %9.2e\n", what, n, ref, fast, ref / fast, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 20;
  std::printf("threads: %d, reps: %d\n", omp_get_max_threads(), reps);
  std::printf("%-18s %6s  %12s  %12s  %9s  %9s\n", "kernel", "n", "reference[s]", "fast[s]",
              "speedup", "max diff");

  for (int n : {64, 256, 1024}) {
    const PeriodicGrid1D grid(n);
    const auto u = SpectralField1D::sample(grid, [](double x) { return std::sin(x) + 0.3 * std::cos(5 * x); });
    const std::vector<double> vals(u.values().begin(), u.values().end());
    std::vector<Complex> naive;
    std::vector<Complex> fast;
    const double t_ref = seconds_per_call([&] { naive = reference::dft(vals); }, reps);
    const double t_fft = seconds_per_call([&] { fast = forward_transform(grid, vals); }, reps);
    double diff = 0.0;
    for (std::size_t k = 0; k < naive.size(); ++k) diff = std::max(diff, std::abs(naive[k] - fast[k]));
    row("dft 1d", n, t_ref, t_fft, diff);

    const SchemeConfig cfg{Scheme::imex1, 0.01, 0.5};
    std::vector<double> w_ref;
    std::optional<SpectralField1D> w_fast;
    const double s_ref = seconds_per_call([&] { w_ref = reference::imex1_step(vals, 0.5, 0.01); }, reps);
    const double s_fast = seconds_per_call([&] { w_fast = imex1_step(u, cfg); }, reps);
    double sd = 0.0;
    for (int j = 0; j < n; ++j) sd = std::max(sd, std::abs(w_ref[j] - w_fast->value(j)));
    row("imex1 step 1d", n, s_ref, s_fast, sd);
  }

  for (int n : {32, 64, 128}) {
    const PeriodicGrid2D grid(n, n);
    const auto u = SpectralField2D::sample(grid, [](double x, double y) { return std::sin(x) * std::sin(y); });
    const std::vector<double> vals(u.values().begin(), u.values().end());
    const SchemeConfig cfg{Scheme::imex1, 0.01, 0.1};
    std::vector<double> w_ref;
    std::optional<SpectralField2D> w_fast;
    const int r = n >= 128 ? 1 : reps;
    const double t_ref = seconds_per_call([&] { w_ref = reference::imex1_step_2d(vals, n, n, 0.1, 0.01); }, r);
    const double t_fast = seconds_per_call([&] { w_fast = imex1_step_2d(u, cfg); }, reps);
    double diff = 0.0;
    for (std::size_t i = 0; i < w_ref.size(); ++i) diff = std::max(diff, std::abs(w_ref[i] - w_fast->values()[i]));
    row("imex1 step 2d", n, t_ref, t_fast, diff);
  }

  // OpenMP scaling of the 2D step: same kernel, one thread vs all threads
  for (int n : {256, 512}) {
    const PeriodicGrid2D grid(n, n);
    const auto u = SpectralField2D::sample(grid, [](double x, double y) { return std::sin(x) * std::sin(y); });
    const SchemeConfig cfg{Scheme::imex1, 0.01, 0.1};
    const int all = omp_get_max_threads();
    omp_set_num_threads(1);
    std::optional<SpectralField2D> a;
    const double t1 = seconds_per_call([&] { a = imex1_step_2d(u, cfg); }, reps);
    omp_set_num_threads(all);
    std::optional<SpectralField2D> b;
    const double tn = seconds_per_call([&] { b = imex1_step_2d(u, cfg); }, reps);
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) diff = std::max(diff, std::abs(a->values()[i] - b->values()[i]));
    row("2d step 1 vs N thr", n, t1, tn, diff);
  }
  return 0;
}
