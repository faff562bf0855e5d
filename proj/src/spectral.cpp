#include "geokin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geokin/geodesic.hpp"

namespace geokin {

namespace {
constexpr double kPi = std::numbers::pi;

void fft_inplace(std::vector<cplx>& a) {
  size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * kPi / (double)len;
    cplx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        cplx u = a[i + j], v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}
}  // namespace

std::vector<double> eta_grid(double Xi, int N) {
  std::vector<double> e(N);
  double deta = kPi / Xi;
  for (int m = 0; m < N; ++m) e[m] = (m - N / 2) * deta;
  return e;
}

int SpectralGrid::index_of(double eta_val) const {
  double deta = kPi / Xi;
  int i = (int)std::lround(eta_val / deta) + N / 2;
  return std::clamp(i, 0, N - 1);
}

std::vector<double> taper_window(int N, double frac) {
  std::vector<double> w(N, 1.0);
  // positions are the midpoint grid over [-1, 1]
  double a0 = 1.0 - frac;
  for (int k = 0; k < N; ++k) {
    double s = std::abs((k + 0.5) * 2.0 / N - 1.0);
    if (s > a0) {
      double c = std::cos(0.5 * kPi * (s - a0) / frac);
      w[k] = c * c;
    }
  }
  return w;
}

std::vector<cplx> dft_direct(const std::vector<double>& u, double Xi) {
  int N = (int)u.size();
  double dxi = 2.0 * Xi / N;
  std::vector<double> eta = eta_grid(Xi, N);
  std::vector<cplx> out(N);
  for (int m = 0; m < N; ++m) {
    cplx s(0.0, 0.0);
    for (int k = 0; k < N; ++k) {
      double xik = -Xi + (k + 0.5) * dxi;
      double ph = -xik * eta[m];
      s += u[k] * cplx(std::cos(ph), std::sin(ph));
    }
    out[m] = dxi * s;
  }
  return out;
}

std::vector<cplx> dft_direct_par(const std::vector<double>& u, double Xi) {
  int N = (int)u.size();
  double dxi = 2.0 * Xi / N;
  std::vector<double> eta = eta_grid(Xi, N);
  std::vector<cplx> out(N);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < N; ++m) {
    cplx s(0.0, 0.0);
    for (int k = 0; k < N; ++k) {
      double xik = -Xi + (k + 0.5) * dxi;
      double ph = -xik * eta[m];
      s += u[k] * cplx(std::cos(ph), std::sin(ph));
    }
    out[m] = dxi * s;
  }
  return out;
}

std::vector<cplx> dft_fast_c(const std::vector<cplx>& u, double Xi) {
  int N = (int)u.size();
  double dxi = 2.0 * Xi / N;
  double s = 0.5 - N / 2.0;
  std::vector<cplx> v(N);
  for (int k = 0; k < N; ++k) v[k] = (k % 2 == 0 ? u[k] : -u[k]);
  fft_inplace(v);
  cplx phase0(std::cos(kPi * s), std::sin(kPi * s));
  std::vector<cplx> out(N);
  for (int m = 0; m < N; ++m) {
    double ang = -2.0 * kPi * s * m / N;
    out[m] = dxi * phase0 * cplx(std::cos(ang), std::sin(ang)) * v[m];
  }
  return out;
}

std::vector<cplx> dft_fast(const std::vector<double>& u, double Xi) {
  std::vector<cplx> cu(u.begin(), u.end());
  return dft_fast_c(cu, Xi);
}

SpectralGrid fourier_xi1(const std::vector<double>& u, double Xi, Taper taper) {
  SpectralGrid g;
  g.Xi = Xi;
  g.N = (int)u.size();
  g.taper = taper;
  g.eta = eta_grid(Xi, g.N);
  if (taper == Taper::cosine) {
    std::vector<double> w = taper_window(g.N);
    std::vector<double> v(g.N);
    for (int k = 0; k < g.N; ++k) v[k] = u[k] * w[k];
    g.uhat = dft_fast(v, Xi);
    g.tail_ok = std::abs(v.front()) < 1e-6 && std::abs(v.back()) < 1e-6;
  } else {
    g.uhat = dft_fast(u, Xi);
    g.tail_ok = std::abs(u.front()) < 1e-6 && std::abs(u.back()) < 1e-6;
  }
  return g;
}

double parseval_gap(const std::vector<double>& u, const std::vector<cplx>& uhat, double Xi) {
  int N = (int)u.size();
  double dxi = 2.0 * Xi / N, deta = kPi / Xi;
  double lhs = 0.0, rhs = 0.0;
  for (int m = 0; m < N; ++m) lhs += std::norm(uhat[m]) * deta;
  for (int k = 0; k < N; ++k) rhs += u[k] * u[k] * dxi;
  rhs *= 2.0 * kPi;
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : 1.0;
  return std::abs(lhs - rhs) / rhs;
}

double TransportResidual::max44(double eta_min) const {
  double mx = 0.0;
  for (size_t i = 0; i < eta.size(); ++i)
    if (std::abs(eta[i]) >= eta_min) mx = std::max(mx, std::abs(res44[i]));
  return mx;
}

TransportResidual transport_residual(const MetricField& m, const SweepFn& sweep, const Vec& x,
                                     const Vec& xiprime, double Xi, int N, double h) {
  int n = m.n;
  std::vector<double> grid(N);
  double dxi = 2.0 * Xi / N;
  for (int k = 0; k < N; ++k) grid[k] = -Xi + (k + 0.5) * dxi;

  std::vector<double> u0 = sweep(x, xiprime);
  // central differences in x^j and xi^s (s >= 2) from independent sweeps
  std::vector<std::vector<double>> du_x(n), du_xi(n - 1);
  for (int j = 0; j < n; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    std::vector<double> up = sweep(xp, xiprime), um = sweep(xm, xiprime);
    du_x[j].resize(N);
    for (int k = 0; k < N; ++k) du_x[j][k] = (up[k] - um[k]) / (2 * h);
  }
  for (int s = 0; s < n - 1; ++s) {
    Vec qp = xiprime, qm = xiprime;
    qp[s] += h;
    qm[s] -= h;
    std::vector<double> up = sweep(x, qp), um = sweep(x, qm);
    du_xi[s].resize(N);
    for (int k = 0; k < N; ++k) du_xi[s][k] = (up[k] - um[k]) / (2 * h);
  }

  Ten3 G = m.christoffel(x);
  auto wmul = [&](const std::vector<double>& v) {  // -i xi^1 v  (transforms to d_eta vhat)
    std::vector<cplx> out(N);
    for (int k = 0; k < N; ++k) out[k] = cplx(0.0, -grid[k]) * v[k];
    return out;
  };

  std::vector<cplx> T_u = dft_fast(u0, Xi);
  std::vector<cplx> Deta_dx1 = dft_fast_c(wmul(du_x[0]), Xi);
  std::vector<std::vector<cplx>> T_dx(n), T_dxi(n - 1), Deta_dxi(n - 1);
  for (int j = 1; j < n; ++j) T_dx[j] = dft_fast(du_x[j], Xi);
  for (int s = 0; s < n - 1; ++s) {
    T_dxi[s] = dft_fast(du_xi[s], Xi);
    Deta_dxi[s] = dft_fast_c(wmul(du_xi[s]), Xi);
  }

  double G1 = 0.0;                      // sum Gamma^1_jk xi^k xi^j, j,k >= 2
  std::vector<double> Gs(n - 1, 0.0);   // sum_jk Gamma^s_jk xi^k xi^j, s >= 2
  std::vector<double> G1k(n - 1, 0.0);  // sum_k Gamma^j_1k xi^k, j >= 2
  for (int j = 1; j < n; ++j)
    for (int k = 1; k < n; ++k) {
      double xx = xiprime[j - 1] * xiprime[k - 1];
      G1 += G.at(0, j, k) * xx;
      for (int s = 1; s < n; ++s) Gs[s - 1] += G.at(s, j, k) * xx;
    }
  for (int j = 1; j < n; ++j)
    for (int k = 1; k < n; ++k) G1k[j - 1] += G.at(j, 0, k) * xiprime[k - 1];

  TransportResidual R;
  R.eta = eta_grid(Xi, N);
  R.res44.resize(N);
  R.res45.resize(N);
  R.res46.resize(N);
  const cplx I(0.0, 1.0);
  for (int mm = 0; mm < N; ++mm) {
    cplx r = I * Deta_dx1[mm];
    for (int j = 1; j < n; ++j) r += xiprime[j - 1] * T_dx[j][mm];
    r -= I * G1 * R.eta[mm] * T_u[mm];
    for (int s = 0; s < n - 1; ++s) {
      r -= 2.0 * I * G1k[s] * Deta_dxi[s][mm];
      r -= Gs[s] * T_dxi[s][mm];
    }
    R.res44[mm] = r;
    // split forms: d_eta d_x1 p - 2 sum G1k d_eta d_xi p = F1, same with q = F2
    double lhs_p = Deta_dx1[mm].real(), lhs_q = Deta_dx1[mm].imag();
    double F1 = G1 * R.eta[mm] * T_u[mm].real(), F2 = G1 * R.eta[mm] * T_u[mm].imag();
    for (int j = 1; j < n; ++j) {
      F1 -= xiprime[j - 1] * T_dx[j][mm].imag();
      F2 += xiprime[j - 1] * T_dx[j][mm].real();
    }
    for (int s = 0; s < n - 1; ++s) {
      lhs_p -= 2.0 * G1k[s] * Deta_dxi[s][mm].real();
      lhs_q -= 2.0 * G1k[s] * Deta_dxi[s][mm].imag();
      F1 += Gs[s] * T_dxi[s][mm].imag();
      F2 -= Gs[s] * T_dxi[s][mm].real();
    }
    R.res45[mm] = std::abs(lhs_p - F1);
    R.res46[mm] = std::abs(lhs_q - F2);
  }
  return R;
}

double characteristic_solve(const MetricField& m, const F2Fn& f2, const Vec& x,
                            const Vec& xiprime, double eta, int nseg, const InflowFn& inflow) {
  int n = m.n;
  if (nseg % 2 != 0) ++nseg;
  // the characteristic line keeps x' fixed; find where it enters the domain ball
  double rad = m.domain.radius;
  double perp2 = 0.0;
  for (int i = 1; i < n; ++i) {
    double d = x[i] - m.domain.center[i];
    perp2 += d * d;
  }
  double disc = rad * rad - perp2;
  if (disc <= 0.0) {
    // the line misses D entirely: F2 vanishes along it
    return inflow ? inflow(x, xiprime, eta) : 0.0;
  }
  double x0_1 = m.domain.center[0] - std::sqrt(disc);
  if (x[0] <= x0_1) return inflow ? inflow(x, xiprime, eta) : 0.0;

  // march zeta' backward from tau = x^1 with d zeta^k/dtau = -2 sum Gamma^k_1j zeta^j
  double len = x[0] - x0_1;
  double dtau = len / nseg;
  std::vector<Vec> zeta(nseg + 1);
  std::vector<Vec> pts(nseg + 1);
  Vec z = xiprime;
  auto rhs = [&](double tau, const Vec& zv) {
    Vec p = x;
    p[0] = tau;
    Ten3 G = m.christoffel(p);
    Vec out(n - 1);
    for (int k = 1; k < n; ++k) {
      double s = 0;
      for (int j = 1; j < n; ++j) s += G.at(k, 0, j) * zv[j - 1];
      out[k - 1] = -2.0 * s;
    }
    return out;
  };
  zeta[nseg] = z;
  for (int i = nseg; i > 0; --i) {
    double tau = x0_1 + i * dtau;
    // RK4 step of size -dtau
    Vec k1 = rhs(tau, z);
    Vec k2 = rhs(tau - 0.5 * dtau, z - 0.5 * dtau * k1);
    Vec k3 = rhs(tau - 0.5 * dtau, z - 0.5 * dtau * k2);
    Vec k4 = rhs(tau - dtau, z - dtau * k3);
    z = z - (dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    zeta[i - 1] = z;
  }
  for (int i = 0; i <= nseg; ++i) {
    Vec p = x;
    p[0] = x0_1 + i * dtau;
    pts[i] = p;
  }

  double integral = 0.0;
  for (int i = 0; i + 2 <= nseg; i += 2) {
    double f0 = f2(pts[i], zeta[i], eta);
    double f1 = f2(pts[i + 1], zeta[i + 1], eta);
    double fx = f2(pts[i + 2], zeta[i + 2], eta);
    integral += (dtau / 3.0) * (f0 + 4.0 * f1 + fx);
  }
  double base = inflow ? inflow(pts[0], zeta[0], eta) : 0.0;
  return base + integral;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || std::abs(y[i]) <= 0) continue;
    double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AsymptoticProbe asymptotic_probe(const MetricField& m, const Vec& x, const Vec& xiprime,
                                 double xi1_lo, double xi1_hi, int count, double step) {
  int n = m.n;
  AsymptoticProbe P;
  auto w_eval = [&](const Vec& xx, const Vec& xi) {
    // |xi| zdot^k(x, nu, t_mid), k >= 2, plus index-1 diagnostic
    double nrm = m.norm(xx, xi);
    Vec nu = (1.0 / nrm) * xi;
    GeodesicPath p = shoot(m, xx, nu, step);
    const PathSample& mid = p.samples[p.samples.size() / 2];
    std::vector<double> w(n - 1);
    for (int k = 1; k < n; ++k) w[k - 1] = nrm * mid.zdot[k];
    double idx1 = xi[0] * mid.zdot[0];
    w.push_back(idx1);
    return w;
  };

  double lr = std::log(xi1_hi / xi1_lo);
  for (int i = 0; i < count; ++i) {
    double xi1 = xi1_lo * std::exp(lr * i / (count - 1));
    Vec xi(n);
    xi[0] = xi1;
    for (int j = 1; j < n; ++j) xi[j] = xiprime[j - 1];
    std::vector<double> w = w_eval(x, xi);
    P.xi1.push_back(xi1);
    P.w.push_back(std::vector<double>(w.begin(), w.end() - 1));
    P.index1.push_back(w.back());

    // scaled derivative combinations |xi|^{|a|-1} d^a (|xi| zdot^k), |a| <= 2
    double nrm = m.norm(x, xi);
    double h = 1e-3;
    double mx = 0.0;
    for (int k = 0; k < n - 1; ++k) mx = std::max(mx, std::abs(w[k]));
    for (int v = 0; v < 2 * n; ++v) {  // vary x^j then xi^j
      Vec xp = x, xm = x, qp = xi, qm = xi;
      if (v < n) {
        xp[v] += h;
        xm[v] -= h;
      } else {
        qp[v - n] += h * std::max(1.0, std::abs(xi[v - n]));
        qm[v - n] -= h * std::max(1.0, std::abs(xi[v - n]));
      }
      double hh = (v < n) ? h : h * std::max(1.0, std::abs(xi[v - n]));
      std::vector<double> wp = w_eval(xp, qp), wm = w_eval(xm, qm);
      for (int k = 0; k < n - 1; ++k) {
        double d1 = (wp[k] - wm[k]) / (2 * hh);
        double d2 = (wp[k] - 2 * w[k] + wm[k]) / (hh * hh);
        mx = std::max(mx, std::abs(d1));           // |a| = 1: |xi|^0 d w
        mx = std::max(mx, std::abs(nrm * d2));     // |a| = 2: |xi| d^2 w
      }
    }
    P.scaled_deriv_max.push_back(mx);
  }

  double worst = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    std::vector<double> wk;
    for (auto& row : P.w) wk.push_back(row[k]);
    double s = loglog_slope(P.xi1, wk);
    if (std::abs(s) > std::abs(worst)) worst = s;
  }
  P.slope_bounded = worst;
  P.slope_index1 = loglog_slope(P.xi1, P.index1);
  // boundedness verdict: nothing along the schedule exceeds a fixed multiple of the start
  P.bounded_ok = true;
  for (int k = 0; k < n - 1; ++k) {
    double start = std::abs(P.w.front()[k]);
    for (auto& row : P.w)
      if (std::abs(row[k]) > 10.0 * std::max(start, 1e-12)) P.bounded_ok = false;
  }
  return P;
}

}  // namespace geokin
