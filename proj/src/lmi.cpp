#include "ratecert/lmi.hpp"

#include <stdexcept>

namespace ratecert {

namespace {

void check_dims(const Matrix& A, const Matrix& B, const SymmetricMatrix& P, const SymmetricMatrix& X) {
  const int n = A.rows();
  if (A.cols() != n || B.rows() != n) throw std::invalid_argument("system block dimension mismatch");
  if (P.dim() != n) throw std::invalid_argument("storage matrix dimension mismatch");
  if (X.dim() != n + B.cols()) throw std::invalid_argument("supply matrix dimension mismatch");
}

// [[Q11 - D, Q12], [Q12', Q22]] - X with Qij the P-weighted system blocks.
SymmetricMatrix quadratic_lhs(const Matrix& A, const Matrix& B, const SymmetricMatrix& P_next,
                              const SymmetricMatrix& D, const SymmetricMatrix& X) {
  const int n = A.rows();
  const int q = B.cols();
  const Matrix PA = P_next.as_matrix() * A;
  const Matrix PB = P_next.as_matrix() * B;
  const Matrix topleft = A.transpose() * PA;
  const Matrix topright = A.transpose() * PB;
  const Matrix bottomright = B.transpose() * PB;

  Matrix full(n + q, n + q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) full(i, j) = topleft(i, j) - D(i, j);
    for (int j = 0; j < q; ++j) {
      full(i, n + j) = topright(i, j);
      full(n + j, i) = topright(i, j);
    }
  }
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) full(n + i, n + j) = bottomright(i, j);
  return SymmetricMatrix::symmetrized(full) - X;
}

}  // namespace

SymmetricMatrix assemble_lti_lhs(const Matrix& A, const Matrix& B, const SymmetricMatrix& P,
                                 double rho_sq, const SymmetricMatrix& X) {
  check_dims(A, B, P, X);
  if (!(rho_sq >= 0.0) || !(rho_sq <= 1.0)) throw std::invalid_argument("rate must satisfy 0 <= rho^2 <= 1");
  return quadratic_lhs(A, B, P, rho_sq * P, X);
}

LmiBlock assemble_lti(const Realization& real, const SymmetricMatrix& P, double rho_sq,
                      const SymmetricMatrix& X) {
  LmiBlock block;
  block.lhs = assemble_lti_lhs(real.A, real.B, P, rho_sq, X);
  block.kind = LmiKind::LTI;
  block.rho_sq = rho_sq;
  return block;
}

SymmetricMatrix assemble_ltv_lhs(const Matrix& A, const Matrix& B, const SymmetricMatrix& P_k,
                                 const SymmetricMatrix& P_next, const SymmetricMatrix& X_k) {
  check_dims(A, B, P_next, X_k);
  if (P_k.dim() != P_next.dim()) throw std::invalid_argument("storage matrix dimension mismatch");
  return quadratic_lhs(A, B, P_next, P_k, X_k);
}

LmiBlock assemble_ltv(const Realization& real, const SymmetricMatrix& P_k,
                      const SymmetricMatrix& P_next, const SymmetricMatrix& X_k, int k) {
  LmiBlock block;
  block.lhs = assemble_ltv_lhs(real.A, real.B, P_k, P_next, X_k);
  block.kind = LmiKind::LTV;
  block.k = k;
  return block;
}

SymmetricMatrix assemble_ct_lhs(const Matrix& A, const Matrix& B, const SymmetricMatrix& P,
                                const SymmetricMatrix& P_dot, const SymmetricMatrix& X) {
  check_dims(A, B, P, X);
  if (P_dot.dim() != P.dim()) throw std::invalid_argument("storage matrix dimension mismatch");
  const int n = A.rows();
  const int q = B.cols();
  const Matrix PA = P.as_matrix() * A;
  const Matrix PB = P.as_matrix() * B;

  Matrix full(n + q, n + q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) full(i, j) = PA(j, i) + PA(i, j) + P_dot(i, j);
    for (int j = 0; j < q; ++j) {
      full(i, n + j) = PB(i, j);
      full(n + j, i) = PB(i, j);
    }
  }
  return SymmetricMatrix::symmetrized(full) - X;
}

LmiBlock assemble_ct(const Matrix& A, const Matrix& B, const SymmetricMatrix& P,
                     const SymmetricMatrix& P_dot, const SymmetricMatrix& X, double t) {
  LmiBlock block;
  block.lhs = assemble_ct_lhs(A, B, P, P_dot, X);
  block.kind = LmiKind::CT;
  block.t = t;
  return block;
}

}  // namespace ratecert
