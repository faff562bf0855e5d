#include <cmath>
#include <cstdio>

#include "geokin/checks.hpp"
#include "geokin/recovery.hpp"

namespace geokin::checks {

namespace {
std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
}  // namespace

Criterion c8_jump_scaling() {
  Criterion cr{8, "Jump scaling and pointwise recovery (6.3)"};
  MetricField m = euclidean_metric(2, DomainBall{Vec(0.0, 0.0), 1.0, 0.2});
  SourceField a = make_bump_source_22(1.0, 1.0, 6);
  RecoverOptions opts;
  std::vector<double> epss = {0.2, 0.1, 0.05};
  std::vector<double> deltas;
  double a_spec_005 = 0.0, a_kin_005 = 0.0;
  for (double eps : epss) {
    RecoverDiag diag;
    recover_point(m, a, Vec(0.0, 0.0), eps, Estimator::both, &diag, opts);
    deltas.push_back(std::abs(diag.jumps[0].delta));
    if (eps == 0.05) {
      a_spec_005 = diag.a_spectral.at(0, 0);
      a_kin_005 = diag.a_kinetic.at(0, 0);
    }
  }
  double expo = loglog_slope(epss, deltas);
  bool e_ok = expo > 1.8 && expo < 2.2;
  cr.checks.push_back({"jump exponent vs eps", e_ok, expo, fmt("exponent %.3f (want 2 +- 0.2)", expo)});
  double ek = std::abs(a_kin_005 - 1.0), es = std::abs(a_spec_005 - 1.0);
  cr.checks.push_back({"kinetic estimator a_22(0)", ek < 0.05, a_kin_005,
                       fmt("value %.4f, err %.2f%% (tol 5%%)", a_kin_005, 100 * ek)});
  cr.checks.push_back({"spectral estimator a_22(0)", es < 0.15, a_spec_005,
                       fmt("value %.4f, err %.2f%% (tol 15%%)", a_spec_005, 100 * es)});
  return cr;
}

Criterion c9_uniqueness() {
  Criterion cr{9, "Theorem 1 embodiment"};
  MetricField m = euclidean_metric(2, DomainBall{Vec(0.0, 0.0), 1.0, 0.2});
  SourceField a1 = make_bump_source_22(1.0, 1.0, 6);
  SourceField a2 = make_bump_source_22(0.5, 1.0, 6);
  std::vector<Vec> centers;
  for (double cx : {-0.3, 0.0, 0.3})
    for (double cy : {-0.3, 0.0, 0.3}) centers.push_back(Vec(cx, cy));
  RecoverOptions opts;
  UniquenessReport r = uniqueness_check(m, a1, a2, centers, 0.05, opts);
  cr.checks.push_back({"zero data -> zero field (3x3 lattice)", r.zero_pass, r.max_zero,
                       fmt("max |ahat| %.3e (tol 1e-6)", r.max_zero)});
  cr.checks.push_back({"two-source recovered difference", r.diff_pass, r.diff_rel_err,
                       fmt("relative err %.2f%% (tol 10%%)", 100 * r.diff_rel_err)});
  return cr;
}

std::vector<Criterion> full_criteria(uint64_t seed) {
  std::vector<Criterion> out = core_criteria(seed);
  out.push_back(c8_jump_scaling());
  out.push_back(c9_uniqueness());
  out.push_back(c10_lemma45_limits());
  return out;
}

}  // namespace geokin::checks
