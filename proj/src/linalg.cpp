#include "epfamily/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace epfamily {

bool cholesky_inverse(const Matrix& a, Matrix& out) {
  std::size_t n = a.dim();
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  // invert L in place, then assemble A^-1 = L^-T L^-1
  Matrix li(n);
  for (std::size_t i = 0; i < n; ++i) {
    li(i, i) = 1.0 / l(i, i);
    for (std::size_t j = 0; j < i; ++j) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s += l(i, k) * li(k, j);
      li(i, j) = -s / l(i, i);
    }
  }
  out = Matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = i; k < n; ++k) s += li(k, i) * li(k, j);
      out(i, j) = out(j, i) = s;
    }
  return true;
}

bool gauss_jordan_inverse(const Matrix& a, Matrix& out, double tol) {
  std::size_t n = a.dim();
  Matrix w = a;
  Matrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(w(i, j)));
  if (scale == 0.0) return false;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::fabs(w(i, col)) > std::fabs(w(piv, col))) piv = i;
    if (std::fabs(w(piv, col)) < tol * scale) return false;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(piv, j), w(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    double d = w(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      w(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      double f = w(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  out = inv;
  return true;
}

} // namespace epfamily
