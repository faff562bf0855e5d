#include "geokin/source.hpp"

namespace geokin {

double SourceField::profile(const Vec& x) const {
  Vec d = x - support_center;
  double s = 1.0 - dot(d, d) / (support_radius * support_radius);
  if (s <= 0.0) return 0.0;
  double p = s;
  for (int e = 1; e < exponent; ++e) p *= s;
  return p;
}

void SourceField::eval(const Vec& x, Mat& out) const {
  int m = n - 1;
  out = Mat(m);
  double p = profile(x);
  if (p == 0.0) return;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.at(i, j) = c[i][j] * p;
}

double SourceField::quadratic(const Vec& x, const Vec& xiprime) const {
  double p = profile(x);
  if (p == 0.0) return 0.0;
  int m = n - 1;
  double s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s += c[i][j] * xiprime[i] * xiprime[j];
  return p * s;
}

bool SourceField::is_zero() const {
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j)
      if (c[i][j] != 0.0) return false;
  return true;
}

SourceField make_bump_source(int n, const std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1>& coeffs,
                             double support_radius, int exponent, Vec center) {
  if (exponent < 6) throw std::invalid_argument("bump exponent must be >= 6 for C^5 vanishing");
  SourceField a;
  a.n = n;
  a.support_center = center.n == n ? center : Vec(n);
  a.support_radius = support_radius;
  a.exponent = exponent;
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      if (coeffs[i][j] != coeffs[j][i]) throw std::invalid_argument("source coefficients must be symmetric");
      a.c[i][j] = coeffs[i][j];
    }
  return a;
}

SourceField make_bump_source_22(double c22, double support_radius, int exponent, Vec center) {
  std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1> co{};
  co[0][0] = c22;
  return make_bump_source(2, co, support_radius, exponent, center);
}

}  // namespace geokin
