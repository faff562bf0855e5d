#include "geokin/geodesic.hpp"

#include <cmath>

namespace geokin {

namespace {

struct State {
  Vec z, v;
};

inline Vec accel(const MetricField& m, const Vec& z, const Vec& v) {
  Ten3 G = m.christoffel(z);
  int n = m.n;
  Vec a(n);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += G.at(i, j, k) * v[j] * v[k];
    a[i] = -s;
  }
  return a;
}

inline State rk4_step(const MetricField& m, const State& y, double dt) {
  Vec k1z = y.v, k1v = accel(m, y.z, y.v);
  Vec k2z = y.v + 0.5 * dt * k1v, k2v = accel(m, y.z + 0.5 * dt * k1z, y.v + 0.5 * dt * k1v);
  Vec k3z = y.v + 0.5 * dt * k2v, k3v = accel(m, y.z + 0.5 * dt * k2z, y.v + 0.5 * dt * k2v);
  Vec k4z = y.v + dt * k3v, k4v = accel(m, y.z + dt * k3z, y.v + dt * k3v);
  State out;
  out.z = y.z + (dt / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
  out.v = y.v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return out;
}

// Refine the exit time within (0, dt] from an inside state by bisection on the
// boundary function, re-stepping from y0 each trial (single-step error O(dt^5)).
double refine_exit(const MetricField& m, const State& y0, double dt, State* exit_state) {
  double lo = 0.0, hi = dt;
  State yhi = rk4_step(m, y0, dt);
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    State ym = rk4_step(m, y0, mid);
    if (m.domain.boundary_fn(ym.z) > 0.0) {
      hi = mid;
      yhi = ym;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, dt)) break;
  }
  *exit_state = yhi;
  return hi;
}

}  // namespace

GeodesicPath shoot(const MetricField& m, const Vec& x, const Vec& xi, double step,
                   double budget_len) {
  double speed = m.norm(x, xi);
  if (speed == 0.0) throw std::runtime_error("zero direction");
  if (budget_len < 0.0) budget_len = 20.0 * (m.domain.radius + m.domain.padding);
  double dt = step / speed;
  long max_steps = (long)std::ceil(budget_len / step) + 1;

  GeodesicPath p;
  p.x0 = x;
  p.xi0 = xi;
  State y{x, xi};
  double t = 0.0;
  p.samples.push_back({t, y.z, y.v});
  if (m.domain.boundary_fn(x) >= 0.0) {
    // starting on/outside the boundary: exits immediately if moving outward
    Vec d = x - m.domain.center;
    if (dot(d, xi) >= 0.0) {
      p.t_exit = 0.0;
      p.exited = true;
      return p;
    }
  }
  for (long k = 0; k < max_steps; ++k) {
    State y1 = rk4_step(m, y, dt);
    if (m.domain.boundary_fn(y1.z) > 0.0) {
      State ye;
      double dte = refine_exit(m, y, dt, &ye);
      p.t_exit = t + dte;
      p.exited = true;
      p.samples.push_back({p.t_exit, ye.z, ye.v});
      return p;
    }
    y = y1;
    t += dt;
    p.samples.push_back({t, y.z, y.v});
  }
  throw non_exit_error("geodesic failed to exit the domain within budget");
}

double integrate_along_ray(const MetricField& m, const Vec& x, const Vec& xi, double step,
                           const std::function<double(const Vec&, const Vec&)>& f,
                           double budget_len) {
  double speed = m.norm(x, xi);
  if (speed == 0.0) throw std::runtime_error("zero direction");
  if (budget_len < 0.0) budget_len = 20.0 * (m.domain.radius + m.domain.padding);
  double dt = step / speed;
  long max_steps = (long)std::ceil(budget_len / step) + 1;

  State y{x, xi};
  if (m.domain.boundary_fn(x) >= 0.0) {
    Vec d = x - m.domain.center;
    if (dot(d, xi) >= 0.0) return 0.0;
  }

  auto simpson_seg = [&](const State& a, double h) -> double {
    // one Simpson cell over [0, h] from state a, midpoint via a half step
    State mid = rk4_step(m, a, 0.5 * h);
    State b = rk4_step(m, a, h);
    return (h / 6.0) * (f(a.z, a.v) + 4.0 * f(mid.z, mid.v) + f(b.z, b.v));
  };

  double total = 0.0;
  // pair up full steps: Simpson over [t_k, t_k + 2 dt] with the stored middle node
  double f_prev = f(y.z, y.v);
  State y_pair_start = y;
  int parity = 0;
  double f_mid = 0.0;
  for (long k = 0; k < max_steps; ++k) {
    State y1 = rk4_step(m, y, dt);
    if (m.domain.boundary_fn(y1.z) > 0.0) {
      State ye;
      double dte = refine_exit(m, y, dt, &ye);
      if (parity == 1) total += simpson_seg(y_pair_start, dt);  // close the dangling step
      total += simpson_seg(y, dte);                             // partial step to the boundary
      return total;
    }
    if (parity == 0) {
      y_pair_start = y;
      f_mid = f(y1.z, y1.v);
      parity = 1;
    } else {
      double f_end = f(y1.z, y1.v);
      total += (2.0 * dt / 6.0) * (f_prev + 4.0 * f_mid + f_end);
      f_prev = f_end;
      parity = 0;
    }
    y = y1;
  }
  throw non_exit_error("geodesic failed to exit the domain within budget");
}

PathSample flow_to_time(const MetricField& m, const Vec& x, const Vec& xi, double t_end,
                        double step) {
  double speed = m.norm(x, xi);
  State y{x, xi};
  if (speed == 0.0 || t_end == 0.0) return {0.0, y.z, y.v};
  long nsteps = std::max(1L, (long)std::ceil(speed * t_end / step));
  double dt = t_end / nsteps;
  for (long k = 0; k < nsteps; ++k) y = rk4_step(m, y, dt);
  return {t_end, y.z, y.v};
}

GeodesicPath connect(const MetricField& m, const Vec& x, const Vec& y, double step) {
  int n = m.n;
  if (step < 0.0) step = 1e-3 * m.domain.radius;
  Vec chord = y - x;
  double clen = norm2(chord);
  if (clen == 0.0) throw connect_error("coincident endpoints");
  Vec e = (1.0 / clen) * chord;

  // orthonormal complement of e (Euclidean frame is fine for the parameterization)
  Vec b1(n), b2(n);
  {
    int imin = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(e[i]) < std::abs(e[imin])) imin = i;
    Vec t(n);
    t[imin] = 1.0;
    b1 = t - dot(t, e) * e;
    b1 *= 1.0 / norm2(b1);
    if (n == 3) {
      b2[0] = e[1] * b1[2] - e[2] * b1[1];
      b2[1] = e[2] * b1[0] - e[0] * b1[2];
      b2[2] = e[0] * b1[1] - e[1] * b1[0];
    }
  }
  int nth = n - 1;

  auto direction = [&](const Vec& th) {
    Vec d = e + th[0] * b1;
    if (nth == 2) d += th[1] * b2;
    return m.unit(x, d);  // unit metric speed (arclength parameter)
  };
  // residual: exit-point mismatch projected on the boundary tangent at y
  Vec ny = y - m.domain.center;
  ny *= 1.0 / norm2(ny);
  Vec t1 = b1 - dot(b1, ny) * ny;
  if (norm2(t1) < 0.5) t1 = e - dot(e, ny) * ny;
  t1 *= 1.0 / norm2(t1);
  Vec t2(n);
  if (n == 3) {
    t2[0] = ny[1] * t1[2] - ny[2] * t1[1];
    t2[1] = ny[2] * t1[0] - ny[0] * t1[2];
    t2[2] = ny[0] * t1[1] - ny[1] * t1[0];
  }

  auto resid = [&](const Vec& th, GeodesicPath* path_out) {
    GeodesicPath p = shoot(m, x, direction(th), step);
    Vec gap = p.samples.back().z - y;
    Vec r(nth);
    r[0] = dot(gap, t1);
    if (nth == 2) r[1] = dot(gap, t2);
    if (path_out) *path_out = p;
    return r;
  };

  Vec th(nth);
  GeodesicPath best;
  Vec r = resid(th, &best);
  double rn = norm2(best.samples.back().z - y);
  for (int it = 0; it < 50; ++it) {
    if (rn < 1e-8) return best;
    // finite-difference Jacobian in the angle parameters
    Mat J(nth);
    double hfd = 1e-6;
    for (int c = 0; c < nth; ++c) {
      Vec tp = th, tm = th;
      tp[c] += hfd;
      tm[c] -= hfd;
      Vec rp = resid(tp, nullptr), rm = resid(tm, nullptr);
      for (int rix = 0; rix < nth; ++rix) J.at(rix, c) = (rp[rix] - rm[rix]) / (2 * hfd);
    }
    Vec dth = solve(J, r);
    double damp = 1.0;
    for (int tries = 0; tries < 25; ++tries) {
      Vec cand = th - damp * dth;
      GeodesicPath p;
      Vec rc = resid(cand, &p);
      double rcn = norm2(p.samples.back().z - y);
      if (rcn < rn || tries == 24) {
        th = cand;
        r = rc;
        rn = rcn;
        best = p;
        break;
      }
      damp *= 0.5;
    }
  }
  if (rn < 1e-8) return best;
  throw connect_error("two-point shooting failed to converge");
}

}  // namespace geokin
