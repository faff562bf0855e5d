#include <cmath>

#include "doctest.h"
#include "geokin/geodesic.hpp"

using namespace geokin;

namespace {
DomainBall unit_ball() { return DomainBall{Vec(0.0, 0.0), 1.0, 0.2}; }
MetricField eu() { return euclidean_metric(2, unit_ball()); }
MetricField m1() { return bump_metric(2, unit_ball()); }
}

TEST_CASE("euclidean rays are straight with the exact exit time") {
  MetricField m = eu();
  Vec x(0.2, -0.3), xi(1.0, 0.5);
  GeodesicPath p = shoot(m, x, xi, 1e-3);
  REQUIRE(p.exited);
  for (const auto& s : p.samples) {
    CHECK(std::abs(s.z[0] - (x[0] + s.t * xi[0])) < 1e-10);
    CHECK(std::abs(s.z[1] - (x[1] + s.t * xi[1])) < 1e-10);
  }
  // |x + t xi| = 1 at exit
  CHECK(norm2(p.samples.back().z) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("step-halving (Richardson) agreement on the bump metric") {
  MetricField m = m1();
  Vec x(0.0, -0.9), xi(0.0, 1.0);
  GeodesicPath a = shoot(m, x, xi, 2e-3);
  GeodesicPath b = shoot(m, x, xi, 1e-3);
  // samples of a at index i sit at the same t as samples of b at 2i
  double worst = 0.0;
  for (size_t i = 0; i + 1 < a.samples.size() && 2 * i + 1 < b.samples.size(); ++i) {
    REQUIRE(a.samples[i].t == doctest::Approx(b.samples[2 * i].t).epsilon(1e-12));
    for (int k = 0; k < 2; ++k)
      worst = std::max(worst, std::abs(a.samples[i].z[k] - b.samples[2 * i].z[k]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("metric speed is conserved along bump geodesics") {
  MetricField m = m1();
  GeodesicPath p = shoot(m, Vec(0.1, -0.4), Vec(0.8, 0.9), 1e-3);
  double v0 = m.norm(p.samples.front().z, p.samples.front().zdot);
  for (const auto& s : p.samples)
    CHECK(m.norm(s.z, s.zdot) == doctest::Approx(v0).epsilon(1e-8));
}

TEST_CASE("x1-axis rays stay on the axis in semi-geodesic metrics") {
  MetricField m = m1();
  GeodesicPath p = shoot(m, Vec(-0.5, 0.2), Vec(2.0, 0.0), 1e-3);
  for (const auto& s : p.samples) {
    CHECK(std::abs(s.zdot[1]) < 1e-9);
    CHECK(std::abs(s.z[1] - 0.2) < 1e-9);
  }
}

TEST_CASE("outward start exits immediately") {
  MetricField m = m1();
  GeodesicPath p = shoot(m, Vec(0.0, 1.0), Vec(0.0, 1.0), 1e-3);
  CHECK(p.exited);
  CHECK(p.t_exit == 0.0);
}

TEST_CASE("connect recovers the euclidean diameter at unit speed") {
  MetricField m = eu();
  GeodesicPath p = connect(m, Vec(-1.0, 0.0), Vec(1.0, 0.0));
  CHECK(p.t_exit == doctest::Approx(2.0).epsilon(1e-7));  // arclength
  CHECK(p.xi0[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(p.xi0[1]) < 1e-7);
}

TEST_CASE("connect round-trip on the bump metric") {
  MetricField m = m1();
  Vec x(-1.0, 0.0), y(0.0, 1.0);
  GeodesicPath p = connect(m, x, y);
  Vec e = p.samples.back().z;
  CHECK(norm2(e - y) < 1e-8);
  // a positive bump makes the connecting geodesic longer than the chord
  CHECK(p.t_exit > std::sqrt(2.0));
  // unit metric speed start
  CHECK(m.norm(x, p.xi0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("flow_to_time matches shoot at interior times") {
  MetricField m = m1();
  Vec x(0.1, -0.2), xi(0.4, 0.3);
  GeodesicPath p = shoot(m, x, xi, 1e-3);
  size_t mid = p.samples.size() / 2;
  PathSample s = flow_to_time(m, x, xi, p.samples[mid].t, 1e-3);
  CHECK(norm2(s.z - p.samples[mid].z) < 1e-9);
  CHECK(norm2(s.zdot - p.samples[mid].zdot) < 1e-9);
}
