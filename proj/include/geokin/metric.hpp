#pragma once
#include <functional>
#include <stdexcept>
#include <string>

#include "geokin/vec.hpp"

namespace geokin {

struct DomainBall {
  Vec center;
  double radius = 1.0;
  double padding = 0.2;  // metric is Euclidean outside radius + padding

  double boundary_fn(const Vec& x) const {
    Vec d = x - center;
    return dot(d, d) - radius * radius;
  }
  bool inside(const Vec& x, double extra = 0.0) const {
    Vec d = x - center;
    return norm2(d) < radius + extra;
  }
};

class invalid_metric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Riemannian metric in semi-geodesic form: g_11 = 1, g_1i = 0. Components and
// first derivatives are supplied as analytic evaluators; a central-difference
// fallback covers derivative-free definitions.
class MetricField {
 public:
  int n = 2;
  DomainBall domain;
  std::function<void(const Vec&, Mat&)> g_fn;
  std::function<void(const Vec&, Ten3&)> dg_fn;  // dg(k,i,j) = d g_ij / d x^k; may be empty
  std::function<void(const Vec&, Ten3&)> christoffel_fn;  // optional analytic fast path

  Mat g(const Vec& x) const;
  Mat ginv(const Vec& x) const;
  Ten3 dg(const Vec& x) const;
  Ten3 christoffel(const Vec& x) const;  // Gamma^i_jk at (i,j,k)
  double norm(const Vec& x, const Vec& xi) const;
  Vec unit(const Vec& x, const Vec& xi) const;
};

MetricField euclidean_metric(int n, DomainBall d);
// g_11 = 1, g_kk = 1 + amplitude*(1-|x|^2)^exponent inside the unit ball (k >= 2).
MetricField bump_metric(int n, DomainBall d, double amplitude = 0.3, int exponent = 7);

struct SemiGeodesicReport {
  double max_violation = 0.0;
  bool pass = false;
};
SemiGeodesicReport validate_semi_geodesic(const MetricField& m, int sample_count,
                                          unsigned long long seed = 12345);

}  // namespace geokin
