#pragma once
#include <functional>
#include <vector>

#include "geokin/metric.hpp"

namespace geokin {

struct PathSample {
  double t;
  Vec z;
  Vec zdot;
};

struct GeodesicPath {
  Vec x0, xi0;
  std::vector<PathSample> samples;  // t = 0 .. t_exit; last sample sits on the boundary
  double t_exit = 0.0;
  bool exited = false;
};

class non_exit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class connect_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrates z'' = -Gamma(z) z' z' with z(0) = x, z'(0) = xi (classical RK4).
// `step` is an arclength increment: the time step is step / |xi|_g, so rays with
// scaled directions traverse identical sample points. Exit from the domain ball
// is refined by bisection on the boundary function to 1e-10.
GeodesicPath shoot(const MetricField& m, const Vec& x, const Vec& xi, double step,
                   double budget_len = -1.0);

// Walks the same integrator without storing samples and accumulates
// int_0^{t_exit} f(z, zdot) dt with composite Simpson (O(step^4)).
double integrate_along_ray(const MetricField& m, const Vec& x, const Vec& xi, double step,
                           const std::function<double(const Vec&, const Vec&)>& f,
                           double budget_len = -1.0);

// State after flowing for a fixed time t_end (no exit detection); used by the
// normal-chart exponential map x(y) = z(center, y, 1).
PathSample flow_to_time(const MetricField& m, const Vec& x, const Vec& xi, double t_end,
                        double step);

// Two-point geodesic between boundary points, damped Newton shooting on the
// initial direction; the returned path has unit metric speed (arclength).
GeodesicPath connect(const MetricField& m, const Vec& x, const Vec& y, double step = -1.0);

}  // namespace geokin
