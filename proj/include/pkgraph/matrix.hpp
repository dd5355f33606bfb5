#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pkgraph::gnn {

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double* row(std::size_t r) { return data.data() + r * cols; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
  std::size_t size() const { return data.size(); }
  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
  void set_zero();

  static Matrix identity(std::size_t n);
  bool operator==(const Matrix&) const = default;
};

// C += alpha * A * B. Zero entries of A are skipped.
void gemm_acc(const Matrix& a, const Matrix& b, Matrix& c, double alpha = 1.0);
// C += alpha * A^T * B.
void gemm_tn_acc(const Matrix& a, const Matrix& b, Matrix& c, double alpha = 1.0);
// C += alpha * A * B^T.
void gemm_nt_acc(const Matrix& a, const Matrix& b, Matrix& c, double alpha = 1.0);

// y += alpha * x
void axpy(double alpha, const Matrix& x, Matrix& y);
double dot(const Matrix& a, const Matrix& b);

// Throws NumericError(tag) on NaN or Inf.
void check_finite(const Matrix& m, const std::string& tag);

}  // namespace pkgraph::gnn
