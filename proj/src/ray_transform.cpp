#include "geokin/ray_transform.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geokin {

double forward_ray(const MetricField& m, const SourceField& a, const Vec& x, const Vec& xi,
                   double step) {
  if (a.is_zero()) return 0.0;
  int n = m.n;
  auto f = [&](const Vec& z, const Vec& zdot) {
    Vec tail(n - 1);
    for (int i = 1; i < n; ++i) tail[i - 1] = zdot[i];
    return a.quadratic(z, tail);
  };
  return integrate_along_ray(m, x, xi, step, f);
}

double incoming_ray(const MetricField& m, const SourceField& a, const Vec& x, const Vec& xi,
                    double step) {
  return forward_ray(m, a, x, -xi, step);
}

double boundary_data(const MetricField& m, const SourceField& a, const Vec& x, const Vec& y,
                     double step) {
  if (a.is_zero()) return 0.0;
  if (step < 0.0) step = 1e-3 * m.domain.radius;
  GeodesicPath p = connect(m, x, y, step);
  return forward_ray(m, a, x, p.xi0, step);
}

double kinetic_residual(const MetricField& m, const SourceField& a, const RayEvaluator& u_eval,
                        const Vec& x, const Vec& xi, double h) {
  int n = m.n;
  double lhs = 0.0;
  for (int j = 0; j < n; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    lhs += xi[j] * (u_eval(xp, xi) - u_eval(xm, xi)) / (2 * h);
  }
  Ten3 G = m.christoffel(x);
  for (int s = 0; s < n; ++s) {
    double coef = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) coef += G.at(s, j, k) * xi[j] * xi[k];
    if (coef != 0.0) {
      Vec xip = xi, xim = xi;
      xip[s] += h;
      xim[s] -= h;
      lhs -= coef * (u_eval(x, xip) - u_eval(x, xim)) / (2 * h);
    }
  }
  Vec tail(n - 1);
  for (int i = 1; i < n; ++i) tail[i - 1] = xi[i];
  return std::abs(lhs - a.quadratic(x, tail));
}

std::vector<double> xi1_grid(double Xi, int N) {
  std::vector<double> g(N);
  double dxi = 2.0 * Xi / N;
  for (int k = 0; k < N; ++k) g[k] = -Xi + (k + 0.5) * dxi;
  return g;
}

std::vector<double> sweep_xi1(const MetricField& m, const SourceField& a, const Vec& x,
                              const Vec& xiprime, double Xi, int N, double step) {
  std::vector<double> u(N);
  std::vector<double> grid = xi1_grid(Xi, N);
  int n = m.n;
  for (int k = 0; k < N; ++k) {
    Vec xi(n);
    xi[0] = grid[k];
    for (int i = 1; i < n; ++i) xi[i] = xiprime[i - 1];
    u[k] = incoming_ray(m, a, x, xi, step);
  }
  return u;
}

std::vector<double> sweep_xi1_par(const MetricField& m, const SourceField& a, const Vec& x,
                                  const Vec& xiprime, double Xi, int N, double step) {
  std::vector<double> u(N);
  std::vector<double> grid = xi1_grid(Xi, N);
  int n = m.n;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < N; ++k) {
    Vec xi(n);
    xi[0] = grid[k];
    for (int i = 1; i < n; ++i) xi[i] = xiprime[i - 1];
    u[k] = incoming_ray(m, a, x, xi, step);
  }
  return u;
}

}  // namespace geokin
