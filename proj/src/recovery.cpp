#include "geokin/recovery.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace geokin {

namespace {
constexpr double kPi = std::numbers::pi;

// least-squares polynomial fit evaluated at 0, plus rms residual
std::pair<double, double> polyfit_at_zero(const std::vector<double>& x,
                                          const std::vector<double>& y, int degree) {
  int d = std::min(degree, 2);
  int terms = d + 1;
  double xs = 0.0;
  for (double v : x) xs = std::max(xs, std::abs(v));
  Mat A(terms);
  Vec b(terms);
  for (size_t i = 0; i < x.size(); ++i) {
    double t = x[i] / xs;  // scale for conditioning
    double pw[3] = {1.0, t, t * t};
    for (int r = 0; r < terms; ++r) {
      b[r] += pw[r] * y[i];
      for (int c = 0; c < terms; ++c) A.at(r, c) += pw[r] * pw[c];
    }
  }
  Vec coef = solve(A, b);
  double rms = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double t = x[i] / xs;
    double fit = coef[0] + (terms > 1 ? coef[1] * t : 0.0) + (terms > 2 ? coef[2] * t * t : 0.0);
    rms += (fit - y[i]) * (fit - y[i]);
  }
  rms = std::sqrt(rms / x.size());
  return {coef[0], rms};
}

Mat small_inverse(const Mat& B) {
  int n = B.n;
  Mat inv(n);
  for (int c = 0; c < n; ++c) {
    Vec e(n);
    e[c] = 1.0;
    Vec col = solve(B, e);
    for (int r = 0; r < n; ++r) inv.at(r, c) = col[r];
  }
  return inv;
}

// a = B^{-T} atilde B^{-1} where atilde = B^T a B, B the (i,k >= 2) Jacobian block
Mat back_transform(const Mat& J0, const Mat& atilde, int n) {
  Mat B(n - 1);
  for (int i = 1; i < n; ++i)
    for (int k = 1; k < n; ++k) B.at(i - 1, k - 1) = J0.at(i, k);
  Mat Bi = small_inverse(B);
  Mat out(n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      double v = 0;
      for (int k = 0; k < n - 1; ++k)
        for (int s = 0; s < n - 1; ++s) v += Bi.at(k, i) * atilde.at(k, s) * Bi.at(s, j);
      out.at(i, j) = v;
    }
  // symmetrize against roundoff
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j) {
      double s = 0.5 * (out.at(i, j) + out.at(j, i));
      out.at(i, j) = s;
      out.at(j, i) = s;
    }
  return out;
}

}  // namespace

JumpEstimate jump_extract(const std::vector<double>& eta, const std::vector<double>& g,
                          double lo_mult, double hi_mult, int degree) {
  double deta = eta[1] - eta[0];
  JumpEstimate J;
  for (int sgn = 0; sgn < 2; ++sgn) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < eta.size(); ++i) {
      double e = sgn == 0 ? eta[i] : -eta[i];
      if (e >= lo_mult * deta - 1e-12 && e <= hi_mult * deta + 1e-12) {
        xs.push_back(eta[i]);
        ys.push_back(g[i]);
      }
    }
    if (xs.size() < 8) throw std::invalid_argument("jump fit window too narrow");
    auto [val, rms] = polyfit_at_zero(xs, ys, degree);
    if (sgn == 0) {
      J.Uplus = val;
      J.resid_plus = rms;
    } else {
      J.Uminus = val;
      J.resid_minus = rms;
    }
  }
  J.delta = J.Uplus - J.Uminus;
  return J;
}

Mat recover_point(const MetricField& m, const SourceField& a, const Vec& center, double eps,
                  Estimator est, RecoverDiag* diag, RecoverOptions opts) {
  int n = m.n;
  int nb = n - 1;
  NormalChart chart = build_chart(m, center);
  if (eps > chart.chart_radius * 4.0 + 1e-12)
    throw std::invalid_argument("probe magnitude too large for the chart");
  double kin_step = 1e-3 * m.domain.radius;
  double sweep_step = opts.ray_step > 0 ? opts.ray_step : 1e-2 * m.domain.radius;
  double h = opts.fd_h;

  // cache chart data at the finite-difference offsets
  struct Off {
    Vec x;
    Mat J;
  };
  std::map<std::pair<int, int>, Off> offs;  // (coord, sign)
  auto off_at = [&](int coord, int sign) -> const Off& {
    auto key = std::make_pair(coord, sign);
    auto it = offs.find(key);
    if (it == offs.end()) {
      Vec y(n);
      if (coord >= 0) y[coord] = sign * h;
      Off o{chart.from_normal(y), chart.jacobian(y)};
      it = offs.emplace(key, std::move(o)).first;
    }
    return it->second;
  };
  auto u_tilde = [&](const Off& o, const Vec& zeta, double step) {
    Vec xi(n);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += o.J.at(i, k) * zeta[k];
      xi[i] = s;
    }
    return incoming_ray(m, a, o.x, xi, step);
  };

  Mat at_kin(nb), at_spec(nb);
  std::vector<JumpEstimate> jumps;

  if (est == Estimator::kinetic || est == Estimator::both) {
    auto dy_u = [&](int coord, const Vec& zeta) {
      return (u_tilde(off_at(coord, +1), zeta, kin_step) -
              u_tilde(off_at(coord, -1), zeta, kin_step)) /
             (2 * h);
    };
    for (int b = 0; b < nb; ++b) {
      Vec zeta(n);
      zeta[b + 1] = eps;
      at_kin.at(b, b) = dy_u(b + 1, zeta) / eps;
    }
    for (int b = 0; b < nb; ++b)
      for (int d = b + 1; d < nb; ++d) {
        Vec zeta(n);
        zeta[b + 1] = eps;
        zeta[d + 1] = eps;
        double s = (dy_u(b + 1, zeta) + dy_u(d + 1, zeta)) / (2 * eps) -
                   0.5 * (at_kin.at(b, b) + at_kin.at(d, d));
        at_kin.at(b, d) = s;
        at_kin.at(d, b) = s;
      }
  }

  if (est == Estimator::spectral || est == Estimator::both) {
    auto sweep_q = [&](const Off& o, const Vec& xip) {
      std::vector<double> grid = xi1_grid(opts.Xi, opts.N);
      std::vector<double> u(opts.N);
#pragma omp parallel for schedule(static)
      for (int k = 0; k < opts.N; ++k) {
        Vec zeta(n);
        zeta[0] = grid[k];
        for (int b = 0; b < nb; ++b) zeta[b + 1] = xip[b];
        u[k] = u_tilde(o, zeta, sweep_step);
      }
      SpectralGrid sg = fourier_xi1(u, opts.Xi, opts.taper);
      std::vector<double> q(opts.N);
      for (int i = 0; i < opts.N; ++i) q[i] = sg.q(i);
      return q;
    };
    auto jump_of = [&](const Vec& xip) {
      std::vector<double> qp = sweep_q(off_at(0, +1), xip);
      std::vector<double> qm = sweep_q(off_at(0, -1), xip);
      std::vector<double> g(opts.N);
      for (int i = 0; i < opts.N; ++i) g[i] = (qp[i] - qm[i]) / (2 * h);
      return jump_extract(eta_grid(opts.Xi, opts.N), g, opts.fit_lo, opts.fit_hi,
                          opts.fit_degree);
    };
    for (int b = 0; b < nb; ++b) {
      Vec xip(nb);
      xip[b] = eps;
      JumpEstimate je = jump_of(xip);
      jumps.push_back(je);
      at_spec.at(b, b) = -je.delta / (2.0 * kPi * eps * eps);
    }
    for (int b = 0; b < nb; ++b)
      for (int d = b + 1; d < nb; ++d) {
        Vec xip(nb);
        xip[b] = eps;
        xip[d] = eps;
        JumpEstimate je = jump_of(xip);
        jumps.push_back(je);
        double s = -je.delta / (4.0 * kPi * eps * eps) -
                   0.5 * (at_spec.at(b, b) + at_spec.at(d, d));
        at_spec.at(b, d) = s;
        at_spec.at(d, b) = s;
      }
  }

  Mat J0 = chart.jacobian(Vec(n));
  Mat a_kin = back_transform(J0, at_kin, n);
  Mat a_spec = back_transform(J0, at_spec, n);
  if (diag) {
    diag->a_kinetic = a_kin;
    diag->a_spectral = a_spec;
    diag->jumps = jumps;
    diag->disagree = false;
    if (est == Estimator::both) {
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
          double k = a_kin.at(i, j), s = a_spec.at(i, j);
          double scale = std::max(std::abs(k), std::abs(s));
          if (scale > 1e-6 && std::abs(k - s) > 0.2 * scale) diag->disagree = true;
        }
    }
  }
  if (est == Estimator::kinetic) return a_kin;
  return a_spec;
}

double RecoveredField::max_abs() const {
  double mx = 0.0;
  for (const Mat& m : ahat)
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) mx = std::max(mx, std::abs(m.at(i, j)));
  return mx;
}

RecoveredField recover_field(const MetricField& m, const SourceField& a,
                             const std::vector<Vec>& centers, double eps, Estimator est,
                             RecoverOptions opts) {
  RecoveredField f;
  f.centers = centers;
  for (const Vec& c : centers) f.ahat.push_back(recover_point(m, a, c, eps, est, nullptr, opts));
  return f;
}

UniquenessReport uniqueness_check(const MetricField& m, const SourceField& a1,
                                  const SourceField& a2, const std::vector<Vec>& centers,
                                  double eps, RecoverOptions opts) {
  UniquenessReport r;
  SourceField zero = a1;
  for (auto& row : zero.c) row.fill(0.0);
  RecoveredField fz = recover_field(m, zero, centers, eps, Estimator::kinetic, opts);
  r.max_zero = fz.max_abs();
  r.noise_floor = 3.0 * r.max_zero;
  r.zero_pass = r.max_zero < 1e-6;

  RecoveredField f1 = recover_field(m, a1, centers, eps, Estimator::kinetic, opts);
  RecoveredField f2 = recover_field(m, a2, centers, eps, Estimator::kinetic, opts);
  int nb = m.n - 1;
  double worst = 0.0, scale = 0.0;
  for (size_t c = 0; c < centers.size(); ++c) {
    Mat t1(nb), t2(nb);
    a1.eval(centers[c], t1);
    a2.eval(centers[c], t2);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j)
        scale = std::max(scale, std::abs(t1.at(i, j) - t2.at(i, j)));
  }
  for (size_t c = 0; c < centers.size(); ++c) {
    Mat t1(nb), t2(nb);
    a1.eval(centers[c], t1);
    a2.eval(centers[c], t2);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) {
        double truth = t1.at(i, j) - t2.at(i, j);
        double got = f1.ahat[c].at(i, j) - f2.ahat[c].at(i, j);
        worst = std::max(worst, std::abs(got - truth));
      }
  }
  r.diff_rel_err = scale > 0 ? worst / scale : worst;
  r.diff_pass = r.diff_rel_err < 0.10;
  r.pass = r.zero_pass && r.diff_pass;
  r.verdict = r.pass ? "unique-consistent" : "inconsistent";
  return r;
}

}  // namespace geokin
