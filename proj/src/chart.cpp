#include "geokin/chart.hpp"

#include <cmath>

#include "geokin/geodesic.hpp"

namespace geokin {

void NormalChart::check_range(const Vec& y) const {
  if (norm2(y) > chart_radius * 1.0000001)
    throw chart_range_error("point outside chart radius");
}

Vec NormalChart::from_normal(const Vec& y) const {
  check_range(y);
  if (norm2(y) == 0.0) return center;
  return flow_to_time(metric, center, y, 1.0, step).z;
}

Vec NormalChart::to_normal(const Vec& x) const {
  int n = metric.n;
  Vec y = x - center;  // Euclidean chord: exact for flat metrics, close otherwise
  if (norm2(y) == 0.0) return Vec(n);
  for (int it = 0; it < 50; ++it) {
    Vec fx = flow_to_time(metric, center, y, 1.0, step).z - x;
    if (norm2(fx) < 1e-11) break;
    Mat J(n);
    double h = jac_h;
    for (int k = 0; k < n; ++k) {
      Vec yp = y, ym = y;
      yp[k] += h;
      ym[k] -= h;
      Vec xp = flow_to_time(metric, center, yp, 1.0, step).z;
      Vec xm = flow_to_time(metric, center, ym, 1.0, step).z;
      for (int i = 0; i < n; ++i) J.at(i, k) = (xp[i] - xm[i]) / (2 * h);
    }
    Vec dy = solve(J, fx);
    double damp = 1.0;
    double f0 = norm2(fx);
    for (int tries = 0; tries < 20; ++tries) {
      Vec cand = y - damp * dy;
      Vec fc = flow_to_time(metric, center, cand, 1.0, step).z - x;
      if (norm2(fc) < f0 || tries == 19) {
        y = cand;
        break;
      }
      damp *= 0.5;
    }
  }
  check_range(y);
  return y;
}

Mat NormalChart::jacobian(const Vec& y) const {
  int n = metric.n;
  Mat J(n);
  for (int k = 0; k < n; ++k) {
    Vec yp = y, ym = y;
    yp[k] += jac_h;
    ym[k] -= jac_h;
    Vec xp = flow_to_time(metric, center, yp, 1.0, step).z;
    Vec xm = flow_to_time(metric, center, ym, 1.0, step).z;
    for (int i = 0; i < n; ++i) J.at(i, k) = (xp[i] - xm[i]) / (2 * jac_h);
  }
  return J;
}

Mat NormalChart::pullback_metric(const Vec& y) const {
  int n = metric.n;
  Mat J = jacobian(y);
  Mat g = metric.g(from_normal(y));
  Mat out(n);
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < n; ++s) {
      double v = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v += g.at(i, j) * J.at(i, k) * J.at(j, s);
      out.at(k, s) = v;
    }
  return out;
}

Ten3 NormalChart::pullback_christoffel(const Vec& y) const {
  int n = metric.n;
  double h = 1e-4;
  Ten3 d(n);
  for (int k = 0; k < n; ++k) {
    Vec yp = y, ym = y;
    yp[k] += h;
    ym[k] -= h;
    Mat gp = pullback_metric(yp), gm = pullback_metric(ym);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d.at(k, i, j) = (gp.at(i, j) - gm.at(i, j)) / (2 * h);
  }
  Mat gi = spd_inverse(pullback_metric(y));
  Ten3 c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int l = 0; l < n; ++l)
          s += gi.at(i, l) * (d.at(j, l, k) + d.at(k, l, j) - d.at(l, j, k));
        c.at(i, j, k) = 0.5 * s;
      }
  return c;
}

Mat NormalChart::pullback_source(const SourceField& a, const Vec& y) const {
  int n = metric.n;
  Mat J = jacobian(y);
  Mat am(n - 1);
  a.eval(from_normal(y), am);
  Mat out(n);
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < n; ++s) {
      double v = 0;
      for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) v += am.at(i - 1, j - 1) * J.at(i, k) * J.at(j, s);
      out.at(k, s) = v;
    }
  return out;
}

NormalChart build_chart(const MetricField& m, const Vec& center, double tol) {
  NormalChart c;
  c.metric = m;
  c.center = center;
  double dist = m.domain.radius - norm2(center - m.domain.center);
  if (dist <= 0.0) throw chart_range_error("chart center not strictly inside the domain");
  c.chart_radius = 0.5 * dist;
  c.step = 1e-3 * m.domain.radius;
  // sanity at the center, per construction invariants
  Vec y0 = c.to_normal(center);
  if (norm2(y0) > tol) throw chart_range_error("chart center does not map to the origin");
  if (std::abs(det(c.jacobian(Vec(m.n)))) < 1e-12)
    throw chart_range_error("degenerate chart Jacobian");
  return c;
}

double chart_ray(const NormalChart& c, const SourceField& a, const Vec& y, const Vec& zeta,
                 double step) {
  Mat J = c.jacobian(y);
  int n = c.metric.n;
  Vec xi(n);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int k = 0; k < n; ++k) s += J.at(i, k) * zeta[k];
    xi[i] = s;
  }
  return incoming_ray(c.metric, a, c.from_normal(y), xi, step);
}

}  // namespace geokin
