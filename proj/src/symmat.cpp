#include "ratecert/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ratecert {

namespace {

void check_dim(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows > Matrix::kMaxDim || cols > Matrix::kMaxDim) {
    throw std::invalid_argument("matrix dimension out of range");
  }
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_dim(rows, cols);
  a_.assign(static_cast<size_t>(rows) * cols, 0.0);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw std::invalid_argument("ragged rows");
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  if (!m.all_finite()) throw std::invalid_argument("non-finite matrix entry");
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  Matrix m(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
  Matrix out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
  Matrix out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
  return out;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Matrix operator*(double s, Matrix m) {
  m *= s;
  return m;
}

Matrix Matrix::kron_identity(int p) const {
  if (p < 1) throw std::invalid_argument("kron factor must be >= 1");
  check_dim(rows_ * p, cols_ * p);
  Matrix out(rows_ * p, cols_ * p);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      for (int a = 0; a < p; ++a) out(i * p + a, j * p + a) = (*this)(i, j);
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

SymmetricMatrix::SymmetricMatrix(int dim) : dim_(dim) {
  check_dim(dim, dim);
  a_.assign(static_cast<size_t>(dim) * dim, 0.0);
}

SymmetricMatrix SymmetricMatrix::identity(int dim) {
  SymmetricMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymmetricMatrix SymmetricMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  return symmetrized(Matrix::from_rows(rows));
}

SymmetricMatrix SymmetricMatrix::outer(std::span<const double> v) {
  SymmetricMatrix m(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      m.a_[i * v.size() + j] = v[i] * v[j];
  if (!m.as_matrix().all_finite()) throw std::invalid_argument("non-finite matrix entry");
  return m;
}

SymmetricMatrix SymmetricMatrix::symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("symmetrized input must be square");
  if (!m.all_finite()) throw std::invalid_argument("non-finite matrix entry");
  SymmetricMatrix out(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out.a_[static_cast<size_t>(i) * m.rows() + j] = 0.5 * (m(i, j) + m(j, i));
  return out;
}

void SymmetricMatrix::set(int i, int j, double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite matrix entry");
  a_[static_cast<size_t>(i) * dim_ + j] = v;
  a_[static_cast<size_t>(j) * dim_ + i] = v;
}

Matrix SymmetricMatrix::as_matrix() const {
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

SymmetricMatrix SymmetricMatrix::operator+(const SymmetricMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix sum dimension mismatch");
  SymmetricMatrix out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
  return out;
}

SymmetricMatrix SymmetricMatrix::operator-(const SymmetricMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix sum dimension mismatch");
  SymmetricMatrix out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
  return out;
}

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& rhs) {
  *this = *this + rhs;
  return *this;
}

SymmetricMatrix operator*(double s, const SymmetricMatrix& m) {
  SymmetricMatrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) out.set(i, j, s * m(i, j));
  return out;
}

double SymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

double off_diagonal_sq(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return s;
}

// One cyclic sweep of Jacobi rotations over the strict upper triangle, in
// fixed row-major order so results are deterministic.
void jacobi_sweep(Matrix& a, Matrix& v) {
  const int n = a.rows();
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double apq = a(p, q);
      const double small = 1e-300 + 1e-18 * (std::fabs(a(p, p)) + std::fabs(a(q, q)));
      if (std::fabs(apq) <= small) continue;
      const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
      const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      const double tau = s / (1.0 + c);
      const double app = a(p, p);
      const double aqq = a(q, q);
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      a(p, p) = app - t * apq;
      a(q, q) = aqq + t * apq;
      for (int r = 0; r < n; ++r) {
        if (r != p && r != q) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        const double vrp = v(r, p);
        const double vrq = v(r, q);
        v(r, p) = vrp - s * (vrq + tau * vrp);
        v(r, q) = vrq + s * (vrp - tau * vrq);
      }
    }
  }
}

}  // namespace

EigenSystem eigen_system(const SymmetricMatrix& m) {
  const int n = m.dim();
  if (n < 1) throw std::invalid_argument("empty matrix");
  Matrix a = m.as_matrix();
  if (!a.all_finite()) throw std::invalid_argument("non-finite matrix entry");
  Matrix v = Matrix::identity(n);

  const double scale = std::max(m.max_abs(), 1e-300);
  const double stop = (1e-15 * scale) * (1e-15 * scale) * n * n;
  for (int sweep = 0; sweep < 50 && off_diagonal_sq(a) > stop; ++sweep) {
    jacobi_sweep(a, v);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenSystem sys;
  sys.values.resize(n);
  sys.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    sys.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) sys.vectors(i, j) = v(i, order[j]);
  }
  return sys;
}

std::vector<double> eigenvalues(const SymmetricMatrix& m) { return eigen_system(m).values; }

double default_definiteness_tol(const SymmetricMatrix& m) {
  return 1e-9 * std::max(1.0, m.max_abs());
}

DefinitenessVerdict definiteness(const SymmetricMatrix& m, DefinitenessSense sense, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
  const std::vector<double> eigs = eigenvalues(m);
  DefinitenessVerdict verdict;
  verdict.sense = sense;
  verdict.tol_used = tol;
  if (sense == DefinitenessSense::PSD) {
    verdict.witness_eig = eigs.front();
    verdict.holds = verdict.witness_eig >= -tol;
  } else {
    verdict.witness_eig = eigs.back();
    verdict.holds = verdict.witness_eig <= tol;
  }
  return verdict;
}

SymmetricMatrix kron_identity(const SymmetricMatrix& m, int p) {
  return SymmetricMatrix::symmetrized(m.as_matrix().kron_identity(p));
}

}  // namespace ratecert
