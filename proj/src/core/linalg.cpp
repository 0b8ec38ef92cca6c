#include "core/linalg.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace ews {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::optional<Cholesky> Cholesky::factor(const Matrix& spd) {
  const std::size_t n = spd.rows();
  if (n == 0 || spd.cols() != n) return std::nullopt;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = spd(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) return std::nullopt;
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return Cholesky(std::move(l));
}

std::vector<double> Cholesky::solve(const std::vector<double>& rhs) const {
  const std::size_t n = l_.rows();
  if (rhs.size() != n) throw Error(ErrorCode::InvalidArgument, "rhs size mismatch");
  std::vector<double> y(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = rhs[i];
    for (std::size_t k = 0; k < i; ++k) v -= l_(i, k) * y[k];
    y[i] = v / l_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double v = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) v -= l_(k, ii) * x[k];
    x[ii] = v / l_(ii, ii);
  }
  return x;
}

Matrix Cholesky::inverse() const {
  const std::size_t n = l_.rows();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    auto col = solve(e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

double trace(const Matrix& m) {
  double t = 0;
  for (std::size_t i = 0; i < m.rows() && i < m.cols(); ++i) t += m(i, i);
  return t;
}

double norm_1(const Matrix& m) {
  double best = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& v) {
  if (v.size() != m.cols()) throw Error(ErrorCode::InvalidArgument, "vector size mismatch");
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

void add_diagonal(Matrix& m, double value) {
  for (std::size_t i = 0; i < m.rows() && i < m.cols(); ++i) m(i, i) += value;
}

double spd_condition_estimate(const Matrix& spd) {
  auto chol = Cholesky::factor(spd);
  if (!chol) return std::numeric_limits<double>::infinity();
  return norm_1(spd) * norm_1(chol->inverse());
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "vector size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace ews
