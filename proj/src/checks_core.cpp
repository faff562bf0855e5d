#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "geokin/checks.hpp"
#include "geokin/geodesic.hpp"
#include "geokin/ray_transform.hpp"
#include "geokin/spectral.hpp"

namespace geokin::checks {

namespace {
constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

MetricField test_euclid() { return euclidean_metric(2, DomainBall{Vec(0.0, 0.0), 1.0, 0.2}); }
MetricField test_m1() { return bump_metric(2, DomainBall{Vec(0.0, 0.0), 1.0, 0.2}, 0.3, 7); }

}  // namespace

Criterion c1_euclidean_exactness(uint64_t seed) {
  Criterion cr{1, "Euclidean geodesic exactness"};
  MetricField m = test_euclid();
  std::mt19937_64 rng(seed ^ 0x101);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Vec x(2);
    do {
      x[0] = 0.9 * U(rng);
      x[1] = 0.9 * U(rng);
    } while (norm2(x) >= 0.9);
    double ang = kPi * U(rng), mag = 0.5 + 1.5 * std::abs(U(rng));
    Vec xi(mag * std::cos(ang), mag * std::sin(ang));
    GeodesicPath p = shoot(m, x, xi, 1e-3);
    for (const auto& s : p.samples) {
      Vec ref = x + s.t * xi;
      worst = std::max(worst, norm2(s.z - ref));
    }
  }
  cr.checks.push_back({"shoot matches z = x + t*xi over 100 random rays", worst < 1e-10, worst,
                       fmt("max dev %.3e (tol 1e-10)", worst)});
  return cr;
}

Criterion c2_homogeneity(uint64_t seed) {
  Criterion cr{2, "Homogeneity z(x,c*xi,t) = z(x,xi,c*t) (M1)"};
  MetricField m = test_m1();
  std::mt19937_64 rng(seed ^ 0x202);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst_z = 0.0, worst_v = 0.0;
  const double cs[3] = {0.5, 2.0, 10.0};
  for (int trial = 0; trial < 50; ++trial) {
    Vec x(2);
    do {
      x[0] = 0.8 * U(rng);
      x[1] = 0.8 * U(rng);
    } while (norm2(x) >= 0.8);
    double ang = kPi * U(rng);
    Vec xi(std::cos(ang), std::sin(ang));
    GeodesicPath base = shoot(m, x, xi, 2e-3);
    for (double c : cs) {
      GeodesicPath sc = shoot(m, x, c * xi, 2e-3);
      size_t cnt = std::min(base.samples.size(), sc.samples.size());
      for (size_t k = 0; k + 1 < cnt; ++k) {  // skip the bisected boundary sample
        worst_z = std::max(worst_z, norm2(sc.samples[k].z - base.samples[k].z));
        worst_v = std::max(worst_v, norm2(sc.samples[k].zdot - c * base.samples[k].zdot) / c);
      }
    }
  }
  cr.checks.push_back({"path deviation", worst_z < 1e-7, worst_z, fmt("max %.3e (tol 1e-7)", worst_z)});
  cr.checks.push_back({"velocity deviation", worst_v < 1e-7, worst_v, fmt("max %.3e (tol 1e-7)", worst_v)});
  return cr;
}

Criterion c3_forward_oracle() {
  Criterion cr{3, "Forward-ray quadrature oracle"};
  MetricField m = test_euclid();
  SourceField a = make_bump_source_22(1.0, 1.0, 6);
  double truth = 46080.0 / 135135.0;  // int_0^1 (1-t^2)^6 dt
  double u = forward_ray(m, a, Vec(0.0, 0.0), Vec(0.0, 1.0), 1e-3);
  double err = std::abs(u - truth);
  cr.checks.push_back({"Euclidean bump value", err < 1e-8, u, fmt("err %.3e vs 0.34099 (tol 1e-8)", err)});
  return cr;
}

Criterion c4_kinetic_residual() {
  Criterion cr{4, "Kinetic equation residual (3.5)"};
  SourceField a = make_bump_source_22(1.0, 1.0, 6);
  struct Case {
    const char* name;
    MetricField m;
    Vec x, xi;
  };
  std::vector<Case> cases;
  cases.push_back({"euclidean", test_euclid(), Vec(0.0, 0.0), Vec(1.0, 1.0)});
  cases.push_back({"m1", test_m1(), Vec(0.15, -0.2), Vec(0.7, 0.9)});
  for (auto& cse : cases) {
    RayEvaluator ev = [&](const Vec& x, const Vec& xi) {
      return incoming_ray(cse.m, a, x, xi, 1e-3);
    };
    double r1 = kinetic_residual(cse.m, a, ev, cse.x, cse.xi, 2e-3);
    double r2 = kinetic_residual(cse.m, a, ev, cse.x, cse.xi, 1e-3);
    double r3 = kinetic_residual(cse.m, a, ev, cse.x, cse.xi, 5e-4);
    double ord = 0.5 * (std::log2(r1 / r2) + std::log2(r2 / r3));
    bool ord_ok = ord > 1.7 && ord < 2.3;
    cr.checks.push_back({std::string(cse.name) + " h-halving order", ord_ok, ord,
                         fmt("order %.2f (want 2 +- 0.3)", ord)});
    if (std::string(cse.name) == "euclidean")
      cr.checks.push_back({"euclidean abs residual at h=1e-3", r2 < 1e-4, r2,
                           fmt("residual %.3e (tol 1e-4)", r2)});
  }
  return cr;
}

Criterion c5_lemma1_contrast() {
  Criterion cr{5, "Lemma 1 / Remark 1 growth contrast"};
  for (int which = 0; which < 2; ++which) {
    MetricField m = which == 0 ? test_euclid() : test_m1();
    const char* name = which == 0 ? "euclidean" : "m1";
    Vec xip(1);
    xip[0] = 1.0;
    AsymptoticProbe P = asymptotic_probe(m, Vec(0.0, -0.1), xip, 1.0, 1e4, 9, 2e-3);
    bool b_ok = std::abs(P.slope_bounded) < 0.1 && P.bounded_ok;
    bool g_ok = P.slope_index1 > 0.8 && P.slope_index1 < 1.2;
    cr.checks.push_back({std::string(name) + " |xi| zdot^k bounded", b_ok, P.slope_bounded,
                         fmt("slope %.3f (want within +-0.1)", P.slope_bounded)});
    cr.checks.push_back({std::string(name) + " index-1 linear growth", g_ok, P.slope_index1,
                         fmt("slope %.3f (want 1 +- 0.2)", P.slope_index1)});
  }
  return cr;
}

Criterion c6_spectral_identities() {
  Criterion cr{6, "Spectral identities"};
  // closed-form inputs: fast transform vs direct summation
  {
    double Xi = 64.0;
    int N = 2048;
    std::vector<double> grid = xi1_grid(Xi, N);
    std::vector<double> ind(N), gauss(N);
    for (int k = 0; k < N; ++k) {
      ind[k] = std::abs(grid[k]) <= 1.0 ? 1.0 : 0.0;
      gauss[k] = std::exp(-grid[k] * grid[k]);
    }
    double worst = 0.0;
    for (auto* u : {&ind, &gauss}) {
      std::vector<cplx> f = dft_fast(*u, Xi), d = dft_direct(*u, Xi);
      for (int i = 0; i < N; ++i) worst = std::max(worst, std::abs(f[i] - d[i]));
    }
    cr.checks.push_back({"fast transform vs direct summation", worst < 1e-10, worst,
                         fmt("max gap %.3e (tol 1e-10)", worst)});
    // continuum closed forms at moderate eta (midpoint-rule accuracy)
    std::vector<cplx> G = dft_fast(gauss, Xi);
    std::vector<double> eta = eta_grid(Xi, N);
    double worst_cf = 0.0;
    for (int i = 0; i < N; ++i)
      if (std::abs(eta[i]) < 5.0)
        worst_cf = std::max(worst_cf, std::abs(G[i] - cplx(std::sqrt(kPi) * std::exp(-eta[i] * eta[i] / 4.0), 0.0)));
    cr.checks.push_back({"Gaussian closed form", worst_cf < 1e-8, worst_cf,
                         fmt("max gap %.3e (tol 1e-8)", worst_cf)});
    // Parseval on forward data
    MetricField m = test_m1();
    SourceField a = make_bump_source_22(1.0, 1.0, 6);
    Vec xip(1);
    xip[0] = 0.3;
    std::vector<double> u = sweep_xi1(m, a, Vec(0.1, 0.2), xip, Xi, 512, 1e-2);
    double gap = parseval_gap(u, dft_fast(u, Xi), Xi);
    cr.checks.push_back({"Parseval identity", gap < 1e-6, gap, fmt("relative gap %.3e (tol 1e-6)", gap)});
  }
  // transport residual (4.4): order-2 decay, Euclidean absolute value
  for (int which = 0; which < 2; ++which) {
    MetricField m = which == 0 ? test_euclid() : test_m1();
    const char* name = which == 0 ? "euclidean" : "m1";
    SourceField a = make_bump_source_22(1.0, 1.0, 6);
    SweepFn sw = [&](const Vec& x, const Vec& xip) {
      return sweep_xi1_par(m, a, x, xip, 64.0, 2048, 1e-2);
    };
    Vec xip(1);
    xip[0] = 0.5;
    Vec x(0.25, 0.2);
    // h large enough that the xi-derivative FD truncation (h^2) dominates the
    // window/quadrature floor of the assembled spectra (~1e-4 for this probe)
    double r[3];
    double hs[3] = {6.4e-2, 3.2e-2, 1.6e-2};
    for (int i = 0; i < 3; ++i)
      r[i] = transport_residual(m, sw, x, xip, 64.0, 2048, hs[i]).max44(0.5);
    double ord = 0.5 * (std::log2(r[0] / r[1]) + std::log2(r[1] / r[2]));
    bool ord_ok = ord > 1.7 && ord < 2.3;
    cr.checks.push_back({std::string(name) + " transport residual order", ord_ok, ord,
                         fmt("order %.2f (want 2 +- 0.3)", ord)});
    if (which == 0) {
      SweepFn sw5 = [&](const Vec& x, const Vec& xip) {
        return sweep_xi1_par(m, a, x, xip, 64.0, 512, 1e-2);
      };
      double r5 = transport_residual(m, sw5, x, xip, 64.0, 512, 1e-3).max44(0.5);
      cr.checks.push_back({"euclidean transport residual at h=1e-3", r5 < 5e-4, r5,
                           fmt("max residual %.3e (tol 5e-4)", r5)});
    }
  }
  return cr;
}

namespace {

// 5-point central difference of q in eta with spacing 2*deta; the truncation
// ringing of the windowed transform is 2*deta-periodic on this grid and cancels.
double detaq_fd(const std::vector<cplx>& uhat, const std::vector<double>& eta, int i, int sp) {
  double d = sp * (eta[1] - eta[0]);
  return (-uhat[i + 2 * sp].imag() + 8.0 * uhat[i + sp].imag() - 8.0 * uhat[i - sp].imag() +
          uhat[i - 2 * sp].imag()) /
         (12.0 * d);
}

}  // namespace

Criterion c7_characteristic(uint64_t seed) {
  Criterion cr{7, "Characteristic consistency (A.16)"};
  const double Xi = 64.0;
  const int N = 1024;
  const double step = 4e-2;
  const double h = 1e-3;
  SourceField a = make_bump_source_22(1.0, 1.0, 6);
  std::vector<double> eta = eta_grid(Xi, N);

  for (int which = 0; which < 2; ++which) {
    MetricField m = which == 0 ? test_euclid() : test_m1();
    const char* name = which == 0 ? "euclidean" : "m1";
    bool flat = which == 0;
    auto uhat_at = [&](const Vec& x, const Vec& xip) {
      return dft_fast(sweep_xi1_par(m, a, x, xip, Xi, N, step), Xi);
    };
    F2Fn f2 = [&](const Vec& x, const Vec& zeta, double ev) {
      int i = (int)std::lround(ev / (eta[1] - eta[0])) + N / 2;
      double F2 = 0.0;
      Ten3 G = m.christoffel(x);
      if (!flat) {
        double G1 = G.at(0, 1, 1) * zeta[0] * zeta[0];
        if (G1 != 0.0) F2 += G1 * ev * uhat_at(x, zeta)[i].imag();
      }
      {
        Vec xp = x, xm = x;
        xp[1] += h;
        xm[1] -= h;
        double dp = (uhat_at(xp, zeta)[i].real() - uhat_at(xm, zeta)[i].real()) / (2 * h);
        F2 += zeta[0] * dp;
      }
      if (!flat) {
        double Gs = G.at(1, 1, 1) * zeta[0] * zeta[0];
        if (Gs != 0.0) {
          Vec zp = zeta, zm = zeta;
          zp[0] += h;
          zm[0] -= h;
          double dp = (uhat_at(x, zp)[i].real() - uhat_at(x, zm)[i].real()) / (2 * h);
          F2 -= Gs * dp;
        }
      }
      return F2;
    };
    InflowFn inflow = [&](const Vec& x0, const Vec& zeta0, double ev) {
      int i = (int)std::lround(ev / (eta[1] - eta[0])) + N / 2;
      return detaq_fd(uhat_at(x0, zeta0), eta, i, 2);
    };

    std::mt19937_64 rng(seed ^ (0x707 + which));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Vec x(0.4 * U(rng), 0.4 * U(rng));
      Vec xip(1);
      xip[0] = (0.10 + 0.10 * std::abs(U(rng))) * (U(rng) > 0 ? 1.0 : -1.0);
      double deta = eta[1] - eta[0];
      int imin = (int)std::ceil(1.0 / deta), imax = (int)std::floor(2.0 / deta);
      int ii = imin + (int)((imax - imin) * 0.5 * (U(rng) + 1.0));
      int i = N / 2 + (U(rng) > 0 ? ii : -ii);
      double ev = eta[i];
      double ref = detaq_fd(uhat_at(x, xip), eta, i, 2);
      double got = characteristic_solve(m, f2, x, xip, ev, 6, inflow);
      worst = std::max(worst, std::abs(got - ref));
    }
    cr.checks.push_back({std::string(name) + " characteristic vs FD d_eta q (20 probes)",
                         worst < 5e-4, worst, fmt("max err %.3e (tol 5e-4)", worst)});
  }
  return cr;
}

Criterion c10_lemma45_limits() {
  Criterion cr{10, "Lemma 4/5 vanishing limits"};
  cr.expected_fail = true;
  MetricField m = test_euclid();
  // support shifted off the evaluation point so q does not vanish identically
  SourceField a = make_bump_source_22(1.0, 0.7, 6, Vec(0.0, 0.15));
  const double Xi = 64.0;
  const int N = 2048;
  const double step = 1e-2;
  const double h = 1e-3;
  Vec x0(0.0, 0.0);
  std::vector<double> grid = xi1_grid(Xi, N), eta = eta_grid(Xi, N);
  double dxi = 2 * Xi / N, deta = eta[1] - eta[0];

  struct Norms {
    double u, dxi_u, ddxi_u, p, dx_p, dxi_p, etaq;
  };
  auto norms_at = [&](double mag) {
    Vec xip(1);
    xip[0] = mag;
    auto L2 = [&](const std::vector<double>& v) {
      double s = 0;
      for (double z : v) s += z * z;
      return std::sqrt(s * dxi);
    };
    std::vector<double> u = sweep_xi1_par(m, a, x0, xip, Xi, N, step);
    Vec xp = xip, xm = xip;
    xp[0] += h;
    xm[0] -= h;
    std::vector<double> up = sweep_xi1_par(m, a, x0, xp, Xi, N, step);
    std::vector<double> um = sweep_xi1_par(m, a, x0, xm, Xi, N, step);
    std::vector<double> du(N), ddu(N);
    for (int k = 0; k < N; ++k) du[k] = (up[k] - um[k]) / (2 * h);
    for (int k = 1; k + 1 < N; ++k) ddu[k] = (du[k + 1] - du[k - 1]) / (2 * dxi);
    Vec yp = x0, ym = x0;
    yp[1] += h;
    ym[1] -= h;
    std::vector<double> uxp = sweep_xi1_par(m, a, yp, xip, Xi, N, step);
    std::vector<double> uxm = sweep_xi1_par(m, a, ym, xip, Xi, N, step);
    std::vector<double> dux(N);
    for (int k = 0; k < N; ++k) dux[k] = (uxp[k] - uxm[k]) / (2 * h);

    auto L1h = [&](const std::vector<cplx>& v, bool imagpart, bool eta_weight) {
      double s = 0;
      for (int i = 0; i < N; ++i) {
        double z = imagpart ? v[i].imag() : v[i].real();
        if (eta_weight) z *= eta[i];
        s += std::abs(z);
      }
      return s * deta;
    };
    std::vector<cplx> Tu = dft_fast(u, Xi), Tdu = dft_fast(du, Xi), Tdux = dft_fast(dux, Xi);
    return Norms{L2(u), L2(du), L2(ddu), L1h(Tu, false, false), L1h(Tdux, false, false),
                 L1h(Tdu, false, false), L1h(Tu, true, true)};
  };

  std::vector<double> mags;
  for (int i = 0; i < 7; ++i) mags.push_back(std::pow(10.0, -2.0 * i / 6.0));  // 1 .. 0.01
  std::vector<Norms> all;
  for (double mg : mags) all.push_back(norms_at(mg));

  auto judge = [&](const char* nm, auto get) {
    std::vector<double> vals;
    for (auto& n : all) vals.push_back(get(n));
    bool mono = true;
    for (size_t i = 1; i < vals.size(); ++i)
      if (vals[i] > vals[i - 1] * 1.0001) mono = false;
    double ratio = vals.back() / vals.front();
    bool ok = mono && ratio < 1e-3;
    cr.checks.push_back({std::string(nm), ok, ratio,
                         fmt("final ratio %.3e (want < 1e-3, monotone)", ratio) +
                             (mono ? "" : " [not monotone]")});
  };
  judge("L2 u(0,.,xi')", [](const Norms& n) { return n.u; });
  judge("L2 d_xi u", [](const Norms& n) { return n.dxi_u; });
  judge("L2 d_xi d_xi1 u", [](const Norms& n) { return n.ddxi_u; });
  judge("L1 p", [](const Norms& n) { return n.p; });
  judge("L1 d_x p", [](const Norms& n) { return n.dx_p; });
  judge("L1 d_xi p", [](const Norms& n) { return n.dxi_p; });
  judge("L1 eta q", [](const Norms& n) { return n.etaq; });
  return cr;
}

std::vector<Criterion> core_criteria(uint64_t seed) {
  std::vector<Criterion> out;
  out.push_back(c1_euclidean_exactness(seed));
  out.push_back(c2_homogeneity(seed));
  out.push_back(c3_forward_oracle());
  out.push_back(c4_kinetic_residual());
  out.push_back(c5_lemma1_contrast());
  out.push_back(c6_spectral_identities());
  out.push_back(c7_characteristic(seed));
  return out;
}

bool print_criteria(const std::vector<Criterion>& cs, bool verbose) {
  bool all = true;
  for (const auto& cr : cs) {
    bool p = cr.pass();
    all = all && p;
    std::printf("[%2d] %s %s%s\n", cr.id, p ? "PASS" : "FAIL", cr.title.c_str(),
                (!p && cr.expected_fail) ? " (known-unattainable threshold, see README)" : "");
    if (verbose || !p)
      for (const auto& ck : cr.checks)
        std::printf("     %s %-44s %s\n", ck.pass ? "ok  " : "FAIL", ck.name.c_str(),
                    ck.detail.c_str());
  }
  return all;
}

}  // namespace geokin::checks
