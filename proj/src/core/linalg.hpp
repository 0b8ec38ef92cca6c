#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace ews {

// Dense row-major matrix. The fits here are 10x10, so everything below is
// plain loops; no blocking, no pivoting beyond what Cholesky needs.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
class Cholesky {
 public:
  // nullopt when the matrix is not positive definite (within fp tolerance).
  static std::optional<Cholesky> factor(const Matrix& spd);

  std::vector<double> solve(const std::vector<double>& rhs) const;
  Matrix inverse() const;

 private:
  explicit Cholesky(Matrix l) : l_(std::move(l)) {}
  Matrix l_;
};

double trace(const Matrix& m);
double norm_1(const Matrix& m);  // max absolute column sum
std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& v);
void add_diagonal(Matrix& m, double value);

// 1-norm condition estimate via the explicit inverse; +inf when the
// factorization fails. Fine at these sizes.
double spd_condition_estimate(const Matrix& spd);

double dot(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ews
