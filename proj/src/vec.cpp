#include "geokin/vec.hpp"

#include <stdexcept>

namespace geokin {

double det(const Mat& m) {
  switch (m.n) {
    case 1:
      return m.at(0, 0);
    case 2:
      return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    default:
      return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
             m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
             m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
  }
}

Mat spd_inverse(const Mat& m) {
  double d = det(m);
  if (d <= 0.0) throw std::runtime_error("matrix not positive definite");
  Mat r(m.n);
  if (m.n == 1) {
    r.at(0, 0) = 1.0 / d;
  } else if (m.n == 2) {
    r.at(0, 0) = m.at(1, 1) / d;
    r.at(1, 1) = m.at(0, 0) / d;
    r.at(0, 1) = -m.at(0, 1) / d;
    r.at(1, 0) = -m.at(1, 0) / d;
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        // adjugate transpose: cofactor C_ji
        r.at(i, j) = (m.at(j1, i1) * m.at(j2, i2) - m.at(j1, i2) * m.at(j2, i1)) / d;
      }
  }
  return r;
}

Vec solve(Mat A, Vec b) {
  int n = A.n;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A.at(r, col)) > std::abs(A.at(piv, col))) piv = r;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A.at(col, j), A.at(piv, j));
      std::swap(b[col], b[piv]);
    }
    double p = A.at(col, col);
    if (p == 0.0) throw std::runtime_error("singular linear system");
    for (int r = col + 1; r < n; ++r) {
      double f = A.at(r, col) / p;
      for (int j = col; j < n; ++j) A.at(r, j) -= f * A.at(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= A.at(r, j) * x[j];
    x[r] = s / A.at(r, r);
  }
  return x;
}

}  // namespace geokin
