#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "geokin/ray_transform.hpp"
#include "geokin/spectral.hpp"

using namespace geokin;

TEST_CASE("radix-2 transform agrees with direct summation") {
  int N = 256;
  double Xi = 8.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> u(N);
  for (double& v : u) v = U(rng);
  std::vector<cplx> f = dft_fast(u, Xi), d = dft_direct(u, Xi), dp = dft_direct_par(u, Xi);
  for (int i = 0; i < N; ++i) {
    CHECK(std::abs(f[i] - d[i]) < 1e-10);
    CHECK(d[i] == dp[i]);
  }
  // complex-input variant reduces to the real one for real data
  std::vector<cplx> uc(u.begin(), u.end());
  std::vector<cplx> fc = dft_fast_c(uc, Xi);
  for (int i = 0; i < N; ++i) CHECK(std::abs(fc[i] - f[i]) < 1e-12);
}

TEST_CASE("indicator closed form 2 sin(eta)/eta") {
  int N = 2048;
  double Xi = 64.0;
  std::vector<double> grid = xi1_grid(Xi, N);
  std::vector<double> u(N);
  for (int k = 0; k < N; ++k) u[k] = std::abs(grid[k]) <= 1.0 ? 1.0 : 0.0;
  std::vector<cplx> f = dft_fast(u, Xi);
  std::vector<double> eta = eta_grid(Xi, N);
  for (int i = 0; i < N; ++i)
    if (std::abs(eta[i]) > 0.2 && std::abs(eta[i]) < 3.0)
      CHECK(std::abs(f[i] - cplx(2.0 * std::sin(eta[i]) / eta[i], 0.0)) < 1e-3);
}

TEST_CASE("transform linearity") {
  int N = 128;
  double Xi = 4.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> a(N), b(N), c(N);
  for (int i = 0; i < N; ++i) {
    a[i] = U(rng);
    b[i] = U(rng);
    c[i] = 2.0 * a[i] - 3.0 * b[i];
  }
  std::vector<cplx> fa = dft_fast(a, Xi), fb = dft_fast(b, Xi), fc = dft_fast(c, Xi);
  for (int i = 0; i < N; ++i) CHECK(std::abs(fc[i] - (2.0 * fa[i] - 3.0 * fb[i])) < 1e-12);
}

TEST_CASE("real input gives even p and odd q") {
  int N = 256;
  double Xi = 8.0;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> u(N);
  for (double& v : u) v = U(rng);
  SpectralGrid sg = fourier_xi1(u, Xi, Taper::none);
  // eta grid is (m - N/2) d, so m and N - m are mirror indices
  for (int i = 1; i < N; ++i) {
    CHECK(sg.p(i) == doctest::Approx(sg.p(N - i)).epsilon(1e-10));
    CHECK(sg.q(i) == doctest::Approx(-sg.q(N - i)).epsilon(1e-10));
  }
}

TEST_CASE("parseval identity on random data") {
  int N = 512;
  double Xi = 16.0;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> G(0.0, 1.0);
  std::vector<double> u(N);
  for (double& v : u) v = G(rng);
  CHECK(parseval_gap(u, dft_fast(u, Xi), Xi) < 1e-12);
}

TEST_CASE("taper window is flat inside and vanishes at the ends") {
  std::vector<double> w = taper_window(200, 0.10);
  CHECK(w[100] == 1.0);
  CHECK(w[50] == 1.0);
  CHECK(w[0] < 0.01);
  CHECK(w[199] < 0.01);
  CHECK(w[0] < w[5]);
  CHECK(w[5] < w[15]);
}

TEST_CASE("grids have midpoint/dual spacing") {
  double Xi = 32.0;
  int N = 64;
  std::vector<double> x = xi1_grid(Xi, N), e = eta_grid(Xi, N);
  CHECK(x[0] == doctest::Approx(-Xi + Xi / N));
  CHECK(x[1] - x[0] == doctest::Approx(2 * Xi / N));
  CHECK(e[N / 2] == 0.0);
  CHECK(e[1] - e[0] == doctest::Approx(std::numbers::pi / Xi));
}

TEST_CASE("characteristic solve reduces to the inflow value for zero F2") {
  MetricField m = euclidean_metric(2, DomainBall{Vec(0.0, 0.0), 1.0, 0.2});
  F2Fn f2 = [](const Vec&, const Vec&, double) { return 0.0; };
  InflowFn in = [](const Vec&, const Vec&, double) { return 0.75; };
  Vec x(0.2, 0.1), xip(1);
  xip[0] = 0.3;
  CHECK(characteristic_solve(m, f2, x, xip, 1.0, 8, in) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("asymptotic probe reports bounded transverse speeds") {
  MetricField m = bump_metric(2, DomainBall{Vec(0.0, 0.0), 1.0, 0.2});
  Vec x(0.0, -0.1), xip(1);
  xip[0] = 1.0;
  AsymptoticProbe pr = asymptotic_probe(m, x, xip, 1.0, 100.0, 5, 2e-3);
  CHECK(pr.bounded_ok);
  CHECK(pr.slope_index1 > 0.8);
  CHECK(pr.slope_index1 < 1.2);
}

TEST_CASE("loglog slope of a quadratic is 2") {
  std::vector<double> x = {1.0, 2.0, 4.0, 8.0}, y;
  for (double v : x) y.push_back(3.0 * v * v);
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
}
