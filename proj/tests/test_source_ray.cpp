#include <cmath>

#include "doctest.h"
#include "geokin/ray_transform.hpp"
#include "geokin/spectral.hpp"

using namespace geokin;

namespace {
DomainBall unit_ball(int n = 2) { return DomainBall{Vec(n), 1.0, 0.2}; }
MetricField eu() { return euclidean_metric(2, unit_ball()); }
MetricField m1() { return bump_metric(2, unit_ball()); }
}

TEST_CASE("source construction rejects bad input") {
  CHECK_THROWS_AS(make_bump_source_22(1.0, 1.0, 4), std::invalid_argument);
  std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1> c{};
  c[0][1] = 0.5;  // c[1][0] left at 0: asymmetric
  CHECK_THROWS_AS(make_bump_source(3, c, 1.0, 6), std::invalid_argument);
}

TEST_CASE("n=3 quadratic form with an off-diagonal coefficient") {
  std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1> c{};
  c[0][1] = c[1][0] = 1.0;
  SourceField a = make_bump_source(3, c, 1.0, 6);
  Vec xip(2);
  double eps = 0.3;
  xip[0] = xip[1] = eps;
  // Q(0) = 2 c23 eps^2 since profile(0) = 1
  CHECK(a.quadratic(Vec(3), xip) == doctest::Approx(2.0 * eps * eps).epsilon(1e-14));
}

TEST_CASE("forward ray is 1-homogeneous in the direction") {
  MetricField m = m1();
  SourceField a = make_bump_source_22(1.0);
  Vec x(0.1, -0.3), xi(0.4, 0.8);
  double base = forward_ray(m, a, x, xi, 1e-3);
  for (double c : {0.5, 2.0, 10.0})
    CHECK(forward_ray(m, a, x, c * xi, 1e-3) == doctest::Approx(base * c).epsilon(1e-9));
}

TEST_CASE("incoming ray equals outgoing ray with reversed direction") {
  MetricField m = m1();
  SourceField a = make_bump_source_22(1.0);
  Vec x(0.25, 0.1), xi(1.3, -0.4);
  CHECK(incoming_ray(m, a, x, xi, 1e-3) == forward_ray(m, a, x, -xi, 1e-3));
}

TEST_CASE("rays along the x1 axis carry no signal") {
  MetricField m = m1();
  SourceField a = make_bump_source_22(1.0);
  Vec xi(2.7, 0.0);
  CHECK(std::abs(forward_ray(m, a, Vec(0.0, 0.3), xi, 1e-3)) < 1e-9);
}

TEST_CASE("large xi1 decay of the incoming transform") {
  MetricField m = eu();
  SourceField a = make_bump_source_22(1.0);
  Vec x(0.0, -0.2), xip(1);
  xip[0] = 0.5;
  std::vector<double> mags = {20.0, 40.0, 80.0, 160.0}, vals;
  for (double s : mags) {
    Vec xi(s, xip[0]);
    vals.push_back(std::abs(incoming_ray(m, a, x, xi, 1e-2)));
  }
  double slope = loglog_slope(mags, vals);
  CHECK(slope > -1.2);
  CHECK(slope < -0.8);
}

TEST_CASE("boundary data is symmetric and matches the diameter oracle") {
  MetricField m = eu();
  SourceField a = make_bump_source_22(1.0);
  Vec x(0.0, -1.0), y(0.0, 1.0);
  double uxy = boundary_data(m, a, x, y);
  double uyx = boundary_data(m, a, y, x);
  CHECK(uxy == doctest::Approx(uyx).epsilon(1e-10));
  // vertical diameter: int_{-1}^{1} (1 - t^2)^6 dt = 2 * 46080/135135
  CHECK(uxy == doctest::Approx(2.0 * 46080.0 / 135135.0).epsilon(1e-8));
}

TEST_CASE("kinetic residual is small at a random phase point") {
  MetricField m = m1();
  SourceField a = make_bump_source_22(1.0);
  RayEvaluator u = [&](const Vec& x, const Vec& xi) { return incoming_ray(m, a, x, xi, 1e-3); };
  CHECK(kinetic_residual(m, a, u, Vec(0.15, -0.2), Vec(0.7, 0.9), 1e-3) < 1e-4);
}

TEST_CASE("parallel sweep is bitwise identical to the serial sweep") {
  MetricField m = m1();
  SourceField a = make_bump_source_22(1.0);
  Vec x(0.1, 0.2), xip(1);
  xip[0] = 0.3;
  std::vector<double> s = sweep_xi1(m, a, x, xip, 16.0, 128, 1e-2);
  std::vector<double> p = sweep_xi1_par(m, a, x, xip, 16.0, 128, 1e-2);
  CHECK(s == p);
}
