#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace ratecert {

/// Small dense real matrix, row-major. Sized for reduced-space certification
/// blocks (state + input) and their identity-lifted variants used in tests.
class Matrix {
 public:
  static constexpr int kMaxDim = 18;

  Matrix() = default;
  Matrix(int rows, int cols);

  static Matrix identity(int n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix column(std::span<const double> v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix& operator*=(double s);

  /// Block-diagonal lift M -> M (x) I_p.
  Matrix kron_identity(int p) const;

  double max_abs() const;
  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Matrix operator*(double s, Matrix m);

/// Dense symmetric matrix. Construction symmetrizes via (M + M^T)/2 so
/// assembled blocks carrying 1-ulp asymmetry remain valid inputs; non-finite
/// entries are rejected.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int dim);

  static SymmetricMatrix identity(int dim);
  static SymmetricMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// v v^T
  static SymmetricMatrix outer(std::span<const double> v);
  /// (M + M^T)/2
  static SymmetricMatrix symmetrized(const Matrix& m);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
  /// Sets entries (i,j) and (j,i).
  void set(int i, int j, double v);

  Matrix as_matrix() const;
  SymmetricMatrix operator+(const SymmetricMatrix& rhs) const;
  SymmetricMatrix operator-(const SymmetricMatrix& rhs) const;
  SymmetricMatrix& operator+=(const SymmetricMatrix& rhs);

  double max_abs() const;
  double trace() const;

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

SymmetricMatrix operator*(double s, const SymmetricMatrix& m);

struct EigenSystem {
  std::vector<double> values;  ///< ascending
  Matrix vectors;              ///< column j pairs with values[j]
};

/// Eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi rotations to
/// machine-precision off-diagonal norm; deterministic for identical input.
std::vector<double> eigenvalues(const SymmetricMatrix& m);

/// Eigenvalues plus accumulated eigenvectors.
EigenSystem eigen_system(const SymmetricMatrix& m);

enum class DefinitenessSense { PSD, NSD };

struct DefinitenessVerdict {
  DefinitenessSense sense = DefinitenessSense::PSD;
  bool holds = false;
  double witness_eig = 0.0;  ///< min eigenvalue for PSD, max for NSD
  double tol_used = 0.0;
};

/// Relative default: certificates in this domain sit exactly on the
/// semidefinite boundary (zero eigenvalues), so the tolerance scales with the
/// matrix magnitude instead of being absolute.
double default_definiteness_tol(const SymmetricMatrix& m);

DefinitenessVerdict definiteness(const SymmetricMatrix& m, DefinitenessSense sense, double tol);

/// M (x) I_p, for validating reduced-space shortcuts against lifted systems.
SymmetricMatrix kron_identity(const SymmetricMatrix& m, int p);

}  // namespace ratecert
