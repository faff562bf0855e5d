#pragma once
#include <functional>
#include <stdexcept>

#include "geokin/vec.hpp"

namespace geokin {

// Symmetric coefficient block a_ij(x), 2 <= i,j <= n, compactly supported.
// Components are indexed 0..n-2 (component k corresponds to tensor index k+2).
class SourceField {
 public:
  int n = 2;
  Vec support_center;
  double support_radius = 1.0;
  int exponent = 6;
  // coefficient matrix at the support center, (n-1) x (n-1)
  std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1> c{};

  // a_ij(x) as an (n-1)x(n-1) matrix stored in out
  void eval(const Vec& x, Mat& out) const;
  // quadratic form Q = sum_{i,j>=2} a_ij(x) xi^i xi^j, xiprime has n-1 entries
  double quadratic(const Vec& x, const Vec& xiprime) const;
  // scalar bump profile (shared by all components)
  double profile(const Vec& x) const;
  bool is_zero() const;
};

SourceField make_bump_source(int n, const std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1>& coeffs,
                             double support_radius, int exponent,
                             Vec center = Vec());

// convenience for the common n = 2 single-component case
SourceField make_bump_source_22(double c22, double support_radius = 1.0, int exponent = 6,
                                Vec center = Vec());

}  // namespace geokin
