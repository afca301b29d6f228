// Apache License, Version 2.0, refer to LICENSE.txt
//
// Wall-time comparison of the OpenMP kernels against their serial reference
// implementations: the posterior grid evaluation and the composition-sum
// normalizer.  Prints one row per case with both timings, the speedup, and
// the largest absolute difference between the two results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "commax/comm.hpp"
#include "commax/inference.hpp"

namespace {

using commax::CommParams;
using commax::GridSpec;
using commax::Hyperparams;
using commax::PosteriorGrid;

template <typename F>
double seconds(F &&body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

double max_abs_diff(const std::vector<double> &a,
                    const std::vector<double> &b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n\n");
#endif
  std::printf("%-32s %12s %12s %9s %12s\n", "case", "serial (s)",
              "parallel (s)", "speedup", "max |diff|");

  // Posterior grid on the soybean posterior.
  const Hyperparams posterior(6, 74.0, 88.69121411857633, 20.0);
  for (const int points : {401, 801}) {
    GridSpec spec;
    spec.psi_points = points;
    spec.nu_points = points;
    PosteriorGrid serial, parallel;
    const double t_serial = seconds(
        [&] { serial = commax::grid_posterior_serial(posterior, spec); });
    const double t_parallel =
        seconds([&] { parallel = commax::grid_posterior(posterior, spec); });
    char label[64];
    std::snprintf(label, sizeof(label), "grid %dx%d", points, points);
    std::printf("%-32s %12.4f %12.4f %8.2fx %12.3e\n", label, t_serial,
                t_parallel, t_serial / t_parallel,
                max_abs_diff(serial.log_density, parallel.log_density));
  }

  // Composition-sum normalizer.
  struct NormalizerCase {
    int m;
    int r;
  };
  for (const NormalizerCase bench : {NormalizerCase{60, 4},
                                     NormalizerCase{120, 5}}) {
    const std::vector<double> p(bench.r, 1.0 / bench.r);
    const CommParams params(bench.m, p, 0.7);
    double serial_value = 0.0, parallel_value = 0.0;
    const double t_serial = seconds(
        [&] { serial_value = commax::comm_log_normalizer_serial(params); });
    const double t_parallel =
        seconds([&] { parallel_value = commax::comm_log_normalizer(params); });
    char label[64];
    std::snprintf(label, sizeof(label), "normalizer m=%d r=%d (%llu terms)",
                  bench.m, bench.r,
                  static_cast<unsigned long long>(
                      commax::composition_count(bench.m, bench.r)));
    std::printf("%-32s %12.4f %12.4f %8.2fx %12.3e\n", label, t_serial,
                t_parallel, t_serial / t_parallel,
                std::abs(serial_value - parallel_value));
  }
  return 0;
}
