#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "geokin/metric.hpp"
#include "geokin/source.hpp"

namespace geokin {

using cplx = std::complex<double>;

enum class Taper { none, cosine };

// Discrete version of F{u}(eta) = int u(xi^1) e^{-i xi^1 eta} dxi^1 over the
// midpoint grid xi1_k = -Xi + (k+1/2) dxi. The eta lattice (m - N/2)*pi/Xi is
// dual to the window; with these grids the discrete Parseval identity is exact.
struct SpectralGrid {
  double Xi = 64.0;
  int N = 4096;
  Taper taper = Taper::none;
  std::vector<double> eta;
  std::vector<cplx> uhat;
  bool tail_ok = true;  // |u| < 1e-6 at the window ends (after taper)

  double p(int i) const { return uhat[i].real(); }
  double q(int i) const { return uhat[i].imag(); }
  int index_of(double eta_val) const;  // nearest grid index
};

std::vector<double> eta_grid(double Xi, int N);
std::vector<double> taper_window(int N, double frac = 0.10);

// reference O(N^2) summation
std::vector<cplx> dft_direct(const std::vector<double>& u, double Xi);
std::vector<cplx> dft_direct_par(const std::vector<double>& u, double Xi);
// radix-2 factorization of the same sum; N must be a power of two
std::vector<cplx> dft_fast(const std::vector<double>& u, double Xi);
// complex input variant (for transforming xi1-weighted samples)
std::vector<cplx> dft_fast_c(const std::vector<cplx>& u, double Xi);

SpectralGrid fourier_xi1(const std::vector<double>& u, double Xi, Taper taper);

// relative gap of sum |uhat|^2 deta vs 2 pi sum u^2 dxi
double parseval_gap(const std::vector<double>& u, const std::vector<cplx>& uhat, double Xi);

// supplies incoming-transform samples over the xi1 grid for given (x, xi')
using SweepFn = std::function<std::vector<double>(const Vec& x, const Vec& xiprime)>;

struct TransportResidual {
  std::vector<double> eta;
  std::vector<cplx> res44;               // left side of (4.4)
  std::vector<double> res45, res46;      // split residuals of (4.5), (4.6)
  double max44(double eta_min) const;    // max |res44| over |eta| >= eta_min
};

TransportResidual transport_residual(const MetricField& m, const SweepFn& sweep, const Vec& x,
                                     const Vec& xiprime, double Xi, int N, double h);

// F2(x, zeta', eta) per (4.5)-(4.6); assembled by the caller from spectra
using F2Fn = std::function<double(const Vec& x, const Vec& zetaprime, double eta)>;
// d_eta q at the inflow point (x0, zeta'(x0^1), eta)
using InflowFn = std::function<double(const Vec& x0, const Vec& zetaprime, double eta)>;

// Integrates the characteristic system (A.14) from the inflow boundary point to
// x^1, accumulating d_eta q = inflow + int F2 dtau per (A.16). The inflow term
// vanishes in the paper's homogeneous-data setting and defaults to zero; with
// synthetic data the caller must supply it.
double characteristic_solve(const MetricField& m, const F2Fn& f2, const Vec& x,
                            const Vec& xiprime, double eta, int nseg = 16,
                            const InflowFn& inflow = nullptr);

struct AsymptoticProbe {
  std::vector<double> xi1;                   // schedule
  std::vector<std::vector<double>> w;        // |xi| zdot^k(x,nu,t*), k >= 2
  std::vector<double> index1;                // xi^1 zdot^1(x,nu,t*)
  std::vector<double> scaled_deriv_max;      // max over |alpha|<=2 of |xi|^{|a|-1} d^a w
  double slope_bounded = 0.0;                // worst log-log slope among k >= 2
  double slope_index1 = 0.0;
  bool bounded_ok = false;
};

AsymptoticProbe asymptotic_probe(const MetricField& m, const Vec& x, const Vec& xiprime,
                                 double xi1_lo, double xi1_hi, int count, double step);

// least-squares slope of log|y| vs log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace geokin
