#pragma once
#include <functional>
#include <vector>

#include "geokin/geodesic.hpp"
#include "geokin/source.hpp"

namespace geokin {

// u(x,xi) = int_0^{t_exit} sum_{i,j>=2} a_ij(z) zdot^i zdot^j dt along the
// outgoing geodesic from (x, xi).
double forward_ray(const MetricField& m, const SourceField& a, const Vec& x, const Vec& xi,
                   double step);

// Integral over the ray segment arriving at x with velocity xi. Equal to
// forward_ray(x, -xi) because the integrand is quadratic in zdot. The kinetic
// equation (and everything downstream of it) is satisfied by this orientation.
double incoming_ray(const MetricField& m, const SourceField& a, const Vec& x, const Vec& xi,
                    double step);

// Integral along the connecting geodesic between boundary points (arclength).
double boundary_data(const MetricField& m, const SourceField& a, const Vec& x, const Vec& y,
                     double step = -1.0);

using RayEvaluator = std::function<double(const Vec& x, const Vec& xi)>;

// | sum_j xi^j du/dx^j - sum_{jks} Gamma^s_jk xi^k xi^j du/dxi^s - Q(x, xi') |
// with central differences of step h; u_eval should be the incoming transform.
double kinetic_residual(const MetricField& m, const SourceField& a, const RayEvaluator& u_eval,
                        const Vec& x, const Vec& xi, double h);

// Incoming-transform samples over the midpoint grid xi1_k = -Xi + (k+1/2)*2Xi/N,
// fixed (x, xi'). The parallel version fills pre-assigned slots and is bitwise
// identical to the serial one for any thread count.
std::vector<double> sweep_xi1(const MetricField& m, const SourceField& a, const Vec& x,
                              const Vec& xiprime, double Xi, int N, double step);
std::vector<double> sweep_xi1_par(const MetricField& m, const SourceField& a, const Vec& x,
                                  const Vec& xiprime, double Xi, int N, double step);

// grid of xi1 values matching sweep_xi1
std::vector<double> xi1_grid(double Xi, int N);

}  // namespace geokin
