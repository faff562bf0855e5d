#include "geokin/metric.hpp"

#include <random>

namespace geokin {

Mat MetricField::g(const Vec& x) const {
  Mat m(n);
  g_fn(x, m);
  // positive definiteness via leading principal minors
  if (m.at(0, 0) <= 1e-12) throw invalid_metric_error("metric not positive definite");
  if (n >= 2 && m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0) <= 1e-12)
    throw invalid_metric_error("metric not positive definite");
  if (n >= 3 && det(m) <= 1e-12) throw invalid_metric_error("metric not positive definite");
  return m;
}

Mat MetricField::ginv(const Vec& x) const { return spd_inverse(g(x)); }

Ten3 MetricField::dg(const Vec& x) const {
  Ten3 t(n);
  if (dg_fn) {
    dg_fn(x, t);
    return t;
  }
  double h = 1e-6 * std::max(1.0, norm2(x));
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    Mat gp(n), gm(n);
    g_fn(xp, gp);
    g_fn(xm, gm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.at(k, i, j) = (gp.at(i, j) - gm.at(i, j)) / (2 * h);
  }
  return t;
}

Ten3 MetricField::christoffel(const Vec& x) const {
  if (christoffel_fn) {
    Ten3 c(n);
    christoffel_fn(x, c);
    return c;
  }
  Mat gi = ginv(x);
  Ten3 d = dg(x);
  Ten3 c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double s = 0;
        for (int l = 0; l < n; ++l)
          s += gi.at(i, l) * (d.at(j, l, k) + d.at(k, l, j) - d.at(l, j, k));
        c.at(i, j, k) = 0.5 * s;
        c.at(i, k, j) = 0.5 * s;
      }
  return c;
}

double MetricField::norm(const Vec& x, const Vec& xi) const {
  Mat m = g(x);
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += m.at(i, j) * xi[i] * xi[j];
  return std::sqrt(s);
}

Vec MetricField::unit(const Vec& x, const Vec& xi) const {
  double s = norm(x, xi);
  if (s == 0.0) throw std::runtime_error("zero direction");
  return (1.0 / s) * xi;
}

MetricField euclidean_metric(int n, DomainBall d) {
  MetricField m;
  m.n = n;
  m.domain = d;
  m.g_fn = [n](const Vec&, Mat& g) { g = Mat::identity(n); };
  m.dg_fn = [n](const Vec&, Ten3& t) { t = Ten3(n); };
  m.christoffel_fn = [n](const Vec&, Ten3& t) { t = Ten3(n); };
  return m;
}

namespace {
double powi(double b, int e) {
  double r = 1.0;
  for (; e > 0; e >>= 1, b *= b)
    if (e & 1) r *= b;
  return r;
}
}  // namespace

MetricField bump_metric(int n, DomainBall d, double amplitude, int exponent) {
  MetricField m;
  m.n = n;
  m.domain = d;
  Vec c = d.center;
  double r2 = d.radius * d.radius;
  auto bump = [c, r2, amplitude, exponent](const Vec& x) -> double {
    Vec dx = x - c;
    double s = 1.0 - dot(dx, dx) / r2;
    if (s <= 0.0) return 0.0;
    return amplitude * powi(s, exponent);
  };
  m.g_fn = [n, bump](const Vec& x, Mat& g) {
    g = Mat::identity(n);
    double b = bump(x);
    for (int k = 1; k < n; ++k) g.at(k, k) = 1.0 + b;
  };
  m.dg_fn = [n, c, r2, amplitude, exponent](const Vec& x, Ten3& t) {
    t = Ten3(n);
    Vec dx = x - c;
    double s = 1.0 - dot(dx, dx) / r2;
    if (s <= 0.0) return;
    double db = -amplitude * exponent * powi(s, exponent - 1) * 2.0 / r2;
    for (int k = 0; k < n; ++k)
      for (int i = 1; i < n; ++i) t.at(k, i, i) = db * dx[k];
  };
  // diagonal metric with g_kk = p(x) for all k >= 2: the nonzero symbols are
  // Gamma^k_kj = dp_j/(2p), Gamma^k_jj = -dp_k/(2p) (j != k, j >= 2, k >= 2),
  // and Gamma^1_jj = -dp_1/2 (j >= 2).
  m.christoffel_fn = [n, c, r2, amplitude, exponent](const Vec& x, Ten3& t) {
    t = Ten3(n);
    Vec dx = x - c;
    double s = 1.0 - dot(dx, dx) / r2;
    if (s <= 0.0) return;
    double p = 1.0 + amplitude * powi(s, exponent);
    double db = -amplitude * exponent * powi(s, exponent - 1) * 2.0 / r2;
    for (int k = 1; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        double v = db * dx[j] / (2.0 * p);
        t.at(k, k, j) = v;
        t.at(k, j, k) = v;
      }
      for (int j = 1; j < n; ++j)
        if (j != k) t.at(k, j, j) = -db * dx[k] / (2.0 * p);
      t.at(0, k, k) = -db * dx[0] / 2.0;
    }
    // Gamma^k_kk was set by the k,j loop (j = k): dp_k/(2p), correct for a
    // diagonal conformal block
  };
  return m;
}

SemiGeodesicReport validate_semi_geodesic(const MetricField& m, int sample_count,
                                          unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double R = m.domain.radius + m.domain.padding;
  SemiGeodesicReport rep;
  for (int s = 0; s < sample_count; ++s) {
    Vec x(m.n);
    do {
      for (int i = 0; i < m.n; ++i) x[i] = m.domain.center[i] + R * U(rng);
    } while (!m.domain.inside(x, m.domain.padding));
    Mat g(m.n);
    m.g_fn(x, g);
    rep.max_violation = std::max(rep.max_violation, std::abs(g.at(0, 0) - 1.0));
    for (int i = 1; i < m.n; ++i) {
      rep.max_violation = std::max(rep.max_violation, std::abs(g.at(0, i)));
      rep.max_violation = std::max(rep.max_violation, std::abs(g.at(i, 0)));
    }
  }
  rep.pass = rep.max_violation < 1e-10;
  return rep;
}

}  // namespace geokin
