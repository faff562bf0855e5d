#include <cmath>

#include "doctest.h"
#include "geokin/metric.hpp"

using namespace geokin;

namespace {
DomainBall unit_ball(int n) { return DomainBall{Vec(n), 1.0, 0.2}; }
}

TEST_CASE("bump metric closed-form components") {
  MetricField m = bump_metric(2, unit_ball(2), 0.3, 7);
  Vec x(0.3, -0.2);
  Mat g = m.g(x);
  double s = 1.0 - (0.09 + 0.04);
  CHECK(g.at(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.at(0, 1) == 0.0);
  CHECK(g.at(1, 0) == 0.0);
  CHECK(g.at(1, 1) == doctest::Approx(1.0 + 0.3 * std::pow(s, 7)).epsilon(1e-13));
}

TEST_CASE("analytic derivatives and christoffel match finite differences") {
  for (int n : {2, 3}) {
    MetricField m = bump_metric(n, unit_ball(n));
    MetricField fd = m;
    fd.dg_fn = nullptr;          // derivative-free fallback
    fd.christoffel_fn = nullptr; // generic assembly
    Vec x(n);
    x[0] = 0.31;
    x[1] = -0.22;
    Ten3 a = m.dg(x), b = fd.dg(x);
    for (int i = 0; i < n * n * n; ++i) CHECK(a.a[i] == doctest::Approx(b.a[i]).epsilon(1e-6));
    Ten3 ca = m.christoffel(x), cb = fd.christoffel(x);
    for (int i = 0; i < n * n * n; ++i) CHECK(std::abs(ca.a[i] - cb.a[i]) < 1e-6);
  }
}

TEST_CASE("christoffel symmetry and semi-geodesic identities") {
  MetricField m = bump_metric(3, unit_ball(3));
  Vec x(0.2, 0.1, -0.3);
  Ten3 c = m.christoffel(x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(c.at(i, j, k) == c.at(i, k, j));
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(c.at(0, 0, k)) < 1e-10);  // Gamma^1_1k
    CHECK(std::abs(c.at(k, 0, 0)) < 1e-10);  // Gamma^k_11
  }
}

TEST_CASE("christoffel vanishes outside the padded ball") {
  MetricField m = bump_metric(2, unit_ball(2));
  Ten3 c = m.christoffel(Vec(1.5, 1.0));
  for (int i = 0; i < 8; ++i) CHECK(std::abs(c.a[i]) < 1e-12);
}

TEST_CASE("metric norm is absolutely homogeneous") {
  MetricField m = bump_metric(2, unit_ball(2));
  Vec x(0.1, 0.4), xi(0.7, -1.3);
  double base = m.norm(x, xi);
  for (double c : {0.5, -2.0, 10.0})
    CHECK(m.norm(x, c * xi) == doctest::Approx(std::abs(c) * base).epsilon(1e-13));
}

TEST_CASE("semi-geodesic validation accepts builtins, rejects coupled g_12") {
  CHECK(validate_semi_geodesic(euclidean_metric(2, unit_ball(2)), 200).pass);
  CHECK(validate_semi_geodesic(bump_metric(2, unit_ball(2)), 200).pass);
  MetricField bad = euclidean_metric(2, unit_ball(2));
  bad.g_fn = [](const Vec&, Mat& g) {
    g = Mat::identity(2);
    g.at(0, 1) = g.at(1, 0) = 0.1;
  };
  SemiGeodesicReport r = validate_semi_geodesic(bad, 50);
  CHECK_FALSE(r.pass);
  CHECK(r.max_violation == doctest::Approx(0.1));
}

TEST_CASE("non-positive-definite evaluation throws") {
  MetricField bad = euclidean_metric(2, unit_ball(2));
  bad.g_fn = [](const Vec&, Mat& g) {
    g = Mat::identity(2);
    g.at(1, 1) = -1.0;
  };
  CHECK_THROWS_AS(bad.g(Vec(0.0, 0.0)), invalid_metric_error);
}
