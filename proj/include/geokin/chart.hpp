#pragma once
#include "geokin/metric.hpp"
#include "geokin/ray_transform.hpp"

namespace geokin {

class chart_range_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Riemannian (normal) coordinates with a chosen center: the forward map is the
// exponential map x(y) = z(center, y, 1), the inverse is Newton shooting, and
// Jacobians come from central differences over the forward map.
class NormalChart {
 public:
  MetricField metric;
  Vec center;
  double chart_radius = 0.0;
  double step = 1e-3;     // geodesic step for the maps
  double jac_h = 1e-5;    // finite-difference step for Jacobians

  Vec to_normal(const Vec& x) const;    // y(x)
  Vec from_normal(const Vec& y) const;  // x(y)
  Mat jacobian(const Vec& y) const;     // dx^i/dy^k
  Mat pullback_metric(const Vec& y) const;
  Ten3 pullback_christoffel(const Vec& y) const;  // finite-difference over pullback_metric
  // full n x n pulled-back coefficient matrix (index-1 rows/cols are zero for
  // sources without index-1 components only in the identity chart)
  Mat pullback_source(const SourceField& a, const Vec& y) const;

 private:
  void check_range(const Vec& y) const;
};

NormalChart build_chart(const MetricField& m, const Vec& center, double tol = 1e-7);

// Incoming transform in chart coordinates: u~(y, zeta) = u(x(y), J(y) zeta),
// evaluated by ray integration in the original coordinates.
double chart_ray(const NormalChart& c, const SourceField& a, const Vec& y, const Vec& zeta,
                 double step);

}  // namespace geokin
