#pragma once

#include <cstddef>
#include <vector>

namespace epfamily {

/// Minimal dense square matrix, row-major. Parameter dimension here is at
/// most 4, so there is no blocking or pivoting sophistication anywhere.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t dim() const { return n_; }
  bool empty() const { return n_ == 0; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Inverse of a symmetric positive definite matrix via Cholesky. Returns
/// false (out untouched) if any pivot is not strictly positive, i.e. the
/// matrix is indefinite or singular to working precision.
bool cholesky_inverse(const Matrix& a, Matrix& out);

/// Inverse via Gauss-Jordan with partial pivoting; false when a pivot falls
/// below tol times the largest absolute entry (singular).
bool gauss_jordan_inverse(const Matrix& a, Matrix& out, double tol = 1e-12);

} // namespace epfamily
