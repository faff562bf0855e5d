#pragma once
#include <optional>
#include <vector>

#include "geokin/chart.hpp"
#include "geokin/spectral.hpp"

namespace geokin {

struct JumpEstimate {
  double Uplus = 0.0, Uminus = 0.0;  // one-sided limits at eta -> +-0
  double delta = 0.0;                // Uplus - Uminus
  double resid_plus = 0.0, resid_minus = 0.0;  // rms fit residuals
};

// One-sided polynomial extrapolation of samples g(eta) to eta = +-0 over the
// window [lo_mult, hi_mult] grid spacings on each side; eta = 0 excluded.
JumpEstimate jump_extract(const std::vector<double>& eta, const std::vector<double>& g,
                          double lo_mult = 2.0, double hi_mult = 20.0, int degree = 2);

enum class Estimator { spectral, kinetic, both };

struct RecoverOptions {
  double Xi = 64.0;
  int N = 4096;
  double ray_step = -1.0;  // default 1e-2 * domain radius for sweeps
  double fd_h = 1e-3;
  int fit_degree = 2;
  double fit_lo = 2.0, fit_hi = 20.0;
  Taper taper = Taper::cosine;
};

struct RecoverDiag {
  Mat a_kinetic;   // recovered block in original coordinates, (n-1) x (n-1)
  Mat a_spectral;
  std::vector<JumpEstimate> jumps;  // diagonal entries then off-diagonals
  bool disagree = false;            // spectral vs kinetic > 20% relative
};

// Pointwise recovery of a_ij(center) through a normal chart: jump of d_{x^1}q
// across eta = 0 (spectral) or the transported kinetic identity at the chart
// center (kinetic). Returns the (n-1) x (n-1) block in original coordinates.
Mat recover_point(const MetricField& m, const SourceField& a, const Vec& center, double eps,
                  Estimator est, RecoverDiag* diag = nullptr, RecoverOptions opts = {});

struct RecoveredField {
  std::vector<Vec> centers;
  std::vector<Mat> ahat;  // (n-1) x (n-1) per center
  double max_abs() const;
};

RecoveredField recover_field(const MetricField& m, const SourceField& a,
                             const std::vector<Vec>& centers, double eps,
                             Estimator est = Estimator::kinetic, RecoverOptions opts = {});

struct UniquenessReport {
  double noise_floor = 0.0;      // 3 x max recovered magnitude on zero data
  double max_zero = 0.0;         // max |ahat| from zero data
  bool zero_pass = false;        // max_zero < 1e-6
  double diff_rel_err = 0.0;     // recovered vs true source difference
  bool diff_pass = false;        // within 10%
  bool pass = false;
  std::string verdict;
};

UniquenessReport uniqueness_check(const MetricField& m, const SourceField& a1,
                                  const SourceField& a2, const std::vector<Vec>& centers,
                                  double eps, RecoverOptions opts = {});

}  // namespace geokin
