#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace splinet {

// Dense column vector of doubles. Values are immutable by convention once a
// computation holds a reference; all operations below are pure.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0) : data_(n, fill) {}
  Vector(std::initializer_list<double> init) : data_(init) {}

  std::size_t size() const { return data_.size(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* begin() { return data_.data(); }
  double* end() { return data_.data() + data_.size(); }
  const double* begin() const { return data_.data(); }
  const double* end() const { return data_.data() + data_.size(); }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

 private:
  std::vector<double> data_;
};

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct eigensolver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Elementwise and BLAS-1 style helpers.
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, double s);
void axpy(double alpha, const Vector& x, Vector& y);  // y += alpha*x
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
void axpy(double alpha, const Matrix& x, Matrix& y);
Matrix transpose(const Matrix& a);
double frobenius_sq(const Matrix& a);
double trace(const Matrix& a);

// Standard matrix-vector product; throws on dimension mismatch.
Vector matvec(const Matrix& a, const Vector& v);
// A^T v without forming the transpose.
Vector matvec_transposed(const Matrix& a, const Vector& v);
// Elementwise (Hadamard) product; throws on length mismatch.
Vector hadamard(const Vector& a, const Vector& b);
// Rank-1 outer product a b^T, shape a.size() x b.size().
Matrix outer(const Vector& a, const Vector& b);

// All eigenvalues of a square real matrix, computed by Householder reduction
// to Hessenberg form followed by Francis double-shift QR iteration.
// Complex eigenvalues come out in conjugate pairs. Throws eigensolver_error
// (with the matrix entries in the message) if the iteration does not
// deflate within 100*n sweeps.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

}  // namespace splinet
