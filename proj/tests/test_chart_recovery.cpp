#include <cmath>

#include "doctest.h"
#include "geokin/chart.hpp"
#include "geokin/recovery.hpp"

using namespace geokin;

namespace {
DomainBall unit_ball(int n = 2) { return DomainBall{Vec(n), 1.0, 0.2}; }
}

TEST_CASE("euclidean chart is a translation") {
  MetricField m = euclidean_metric(2, unit_ball());
  NormalChart c = build_chart(m, Vec(0.2, -0.1));
  Vec y(0.05, 0.1);
  Vec x = c.from_normal(y);
  CHECK(x[0] == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-10));
  Mat J = c.jacobian(y);
  CHECK(J.at(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(J.at(1, 1) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(J.at(0, 1)) < 1e-8);
}

TEST_CASE("bump chart round trip") {
  MetricField m = bump_metric(2, unit_ball());
  NormalChart c = build_chart(m, Vec(0.1, 0.2));
  for (double f : {0.2, 0.6, -0.8}) {
    Vec y(f * 0.4 * c.chart_radius, -f * 0.3 * c.chart_radius);
    Vec x = c.from_normal(y);
    Vec yy = c.to_normal(x);
    CHECK(norm2(yy - y) < 1e-8);
  }
}

TEST_CASE("pulled-back christoffel vanishes at the chart center") {
  MetricField m = bump_metric(2, unit_ball());
  NormalChart c = build_chart(m, Vec(0.1, -0.15));
  Ten3 G = c.pullback_christoffel(Vec(2));
  for (int i = 0; i < 8; ++i) CHECK(std::abs(G.a[i]) < 1e-4);  // FD-limited
}

TEST_CASE("pullback source at the center matches the jacobian congruence") {
  MetricField m = bump_metric(2, unit_ball());
  SourceField a = make_bump_source_22(1.0);
  Vec ctr(0.15, 0.05);
  NormalChart c = build_chart(m, ctr);
  Mat J = c.jacobian(Vec(2));
  Mat at = c.pullback_source(a, Vec(2));
  Mat orig(1);
  a.eval(ctr, orig);
  double expect = J.at(1, 1) * J.at(1, 1) * orig.at(0, 0);
  CHECK(at.at(1, 1) == doctest::Approx(expect).epsilon(1e-8));
  CHECK(std::abs(at.at(0, 0)) < 1e-12);
  CHECK(std::abs(at.at(0, 1)) < 1e-12);
}

TEST_CASE("points outside the chart radius are rejected") {
  MetricField m = bump_metric(2, unit_ball());
  NormalChart c = build_chart(m, Vec(0.0, 0.0));
  Vec far(2.0 * c.chart_radius, 0.0);
  CHECK_THROWS_AS(c.from_normal(far), chart_range_error);
}

TEST_CASE("jump extraction is exact on polynomial sides") {
  int N = 256;
  std::vector<double> eta = eta_grid(8.0, N), g(N);
  for (int i = 0; i < N; ++i) {
    double e = eta[i];
    g[i] = (e > 0 ? 2.0 - 0.5 * e : -1.0 + e) + 0.25 * e * e;
  }
  JumpEstimate J = jump_extract(eta, g);
  CHECK(J.Uplus == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(J.Uminus == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(J.delta == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(J.resid_plus < 1e-10);
}

TEST_CASE("jump extraction tolerates smooth curvature") {
  int N = 512;
  std::vector<double> eta = eta_grid(64.0, N), g(N);
  for (int i = 0; i < N; ++i) {
    double e = eta[i];
    g[i] = (e > 0 ? 1.0 : 0.0) + std::sin(0.8 * e);
  }
  JumpEstimate J = jump_extract(eta, g, 2, 10);
  CHECK(J.delta == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("zero source recovers the zero tensor") {
  MetricField m = euclidean_metric(2, unit_ball());
  SourceField z = make_bump_source_22(0.0);
  Mat a = recover_point(m, z, Vec(0.1, 0.1), 0.05, Estimator::kinetic);
  CHECK(a.at(0, 0) == 0.0);
}

TEST_CASE("n=3 kinetic recovery with an off-diagonal component") {
  MetricField m = euclidean_metric(3, unit_ball(3));
  std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1> c{};
  c[0][0] = 1.0;
  c[1][1] = 0.8;
  c[0][1] = c[1][0] = 0.5;
  SourceField a = make_bump_source(3, c, 1.0, 6);
  Mat got = recover_point(m, a, Vec(3), 0.05, Estimator::kinetic);
  CHECK(got.at(0, 0) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(got.at(1, 1) == doctest::Approx(0.8).epsilon(0.02));
  CHECK(got.at(0, 1) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("kinetic and spectral estimators agree at the center") {
  MetricField m = euclidean_metric(2, unit_ball());
  SourceField a = make_bump_source_22(1.0);
  RecoverDiag diag;
  RecoverOptions opts;
  opts.N = 2048;
  recover_point(m, a, Vec(0.0, 0.0), 0.1, Estimator::both, &diag, opts);
  CHECK_FALSE(diag.disagree);
  CHECK(diag.a_kinetic.at(0, 0) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(diag.a_spectral.at(0, 0) == doctest::Approx(1.0).epsilon(0.15));
}
