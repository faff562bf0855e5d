#pragma once
#include <array>
#include <cmath>
#include <cassert>

namespace geokin {

// Small dense containers for dimension n <= 3. The dimension is runtime but
// storage is fixed-capacity, so everything lives on the stack.
constexpr int kMaxDim = 3;

struct Vec {
  int n = 2;
  std::array<double, kMaxDim> a{};

  Vec() = default;
  Vec(int dim) : n(dim) { assert(dim >= 1 && dim <= kMaxDim); }
  Vec(double x, double y) : n(2) { a[0] = x; a[1] = y; }
  Vec(double x, double y, double z) : n(3) { a[0] = x; a[1] = y; a[2] = z; }

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }

  Vec& operator+=(const Vec& o) { for (int i = 0; i < n; ++i) a[i] += o.a[i]; return *this; }
  Vec& operator-=(const Vec& o) { for (int i = 0; i < n; ++i) a[i] -= o.a[i]; return *this; }
  Vec& operator*=(double c) { for (int i = 0; i < n; ++i) a[i] *= c; return *this; }

  friend Vec operator+(Vec l, const Vec& r) { return l += r; }
  friend Vec operator-(Vec l, const Vec& r) { return l -= r; }
  friend Vec operator*(double c, Vec v) { return v *= c; }
  friend Vec operator*(Vec v, double c) { return v *= c; }
  friend Vec operator-(Vec v) { return v *= -1.0; }
};

inline double dot(const Vec& x, const Vec& y) {
  double s = 0;
  for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
  return s;
}
inline double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

struct Mat {
  int n = 2;
  std::array<double, kMaxDim * kMaxDim> a{};

  Mat() = default;
  Mat(int dim) : n(dim) {}
  double& at(int i, int j) { return a[i * n + j]; }
  double at(int i, int j) const { return a[i * n + j]; }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

// Rank-3 array, t(k,i,j); used for metric derivatives and Christoffel symbols.
struct Ten3 {
  int n = 2;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> a{};

  Ten3() = default;
  Ten3(int dim) : n(dim) {}
  double& at(int k, int i, int j) { return a[(k * n + i) * n + j]; }
  double at(int k, int i, int j) const { return a[(k * n + i) * n + j]; }
};

// Inverse of a symmetric positive definite matrix, n <= 3, by adjugate.
Mat spd_inverse(const Mat& m);
double det(const Mat& m);

// Solve the n x n linear system A x = b (partial pivoting; n <= 3).
Vec solve(Mat A, Vec b);

}  // namespace geokin
