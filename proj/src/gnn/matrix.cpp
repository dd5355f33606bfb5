#include "pkgraph/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "pkgraph/error.hpp"

namespace pkgraph::gnn {

void Matrix::set_zero() { std::fill(data.begin(), data.end(), 0.0); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void gemm_acc(const Matrix& a, const Matrix& b, Matrix& c, double alpha) {
  if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols)
    throw ContractError("gemm shape mismatch");
  for (std::size_t i = 0; i < a.rows; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double s = alpha * ai[k];
      if (s == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols; ++j) ci[j] += s * bk[j];
    }
  }
}

void gemm_tn_acc(const Matrix& a, const Matrix& b, Matrix& c, double alpha) {
  if (a.rows != b.rows || c.rows != a.cols || c.cols != b.cols)
    throw ContractError("gemm_tn shape mismatch");
  for (std::size_t k = 0; k < a.rows; ++k) {
    const double* ak = a.row(k);
    const double* bk = b.row(k);
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double s = alpha * ak[i];
      if (s == 0.0) continue;
      double* ci = c.row(i);
      for (std::size_t j = 0; j < b.cols; ++j) ci[j] += s * bk[j];
    }
  }
}

void gemm_nt_acc(const Matrix& a, const Matrix& b, Matrix& c, double alpha) {
  if (a.cols != b.cols || c.rows != a.rows || c.cols != b.rows)
    throw ContractError("gemm_nt shape mismatch");
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t j = 0; j < b.rows; ++j) {
      const double* bj = b.row(j);
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) s += ai[k] * bj[k];
      ci[j] += alpha * s;
    }
  }
}

void axpy(double alpha, const Matrix& x, Matrix& y) {
  if (!x.same_shape(y)) throw ContractError("axpy shape mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y.data[i] += alpha * x.data[i];
}

double dot(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ContractError("dot shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

void check_finite(const Matrix& m, const std::string& tag) {
  for (double v : m.data)
    if (!std::isfinite(v)) throw NumericError(tag, "non-finite value");
}

}  // namespace pkgraph::gnn
