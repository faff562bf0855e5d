#include <chrono>
#include <cmath>
#include <cstdio>

#include "geokin/ray_transform.hpp"
#include "geokin/spectral.hpp"

using namespace geokin;

namespace {
template <typename F>
double time_ms(F&& f, int reps = 1) {
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}
}  // namespace

int main() {
  DomainBall d{Vec(0.0, 0.0), 1.0, 0.2};
  MetricField m = bump_metric(2, d);
  SourceField a = make_bump_source_22(1.0);
  Vec x(0.0, -0.1), xip(1);
  xip[0] = 0.5;

  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial ms", "par ms", "speedup");

  for (int N : {512, 2048}) {
    double Xi = 64.0;
    std::vector<double> us, up;
    double ts = time_ms([&] { us = sweep_xi1(m, a, x, xip, Xi, N, 2e-2); });
    double tp = time_ms([&] { up = sweep_xi1_par(m, a, x, xip, Xi, N, 2e-2); });
    bool same = us == up;  // must be bitwise identical
    std::printf("%-28s N=%-5d %10.1f %10.1f %7.2fx%s\n", "ray sweep", N, ts, tp, ts / tp,
                same ? "" : "  MISMATCH");
  }

  for (int N : {1024, 4096}) {
    std::vector<double> u(N);
    for (int k = 0; k < N; ++k) u[k] = std::exp(-0.5 * (k - N / 2) * (k - N / 2) / (N / 64.0));
    std::vector<cplx> a1, a2, a3;
    double td = time_ms([&] { a1 = dft_direct(u, 64.0); });
    double tdp = time_ms([&] { a2 = dft_direct_par(u, 64.0); });
    double tf = time_ms([&] { a3 = dft_fast(u, 64.0); }, 20);
    std::printf("%-28s N=%-5d %10.2f %10.2f %7.2fx\n", "transform: direct", N, td, tdp, td / tdp);
    std::printf("%-28s N=%-5d %10.2f %10s %7.2fx vs direct\n", "transform: radix-2", N, tf, "-",
                td / tf);
  }
  return 0;
}
