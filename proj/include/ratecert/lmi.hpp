#pragma once

#include "ratecert/methods.hpp"
#include "ratecert/symmat.hpp"

namespace ratecert {

enum class LmiKind { LTI, LTV, CT };

/// An assembled dissipation-inequality left-hand side. Feasibility of the
/// certificate is negative semidefiniteness of `lhs`.
struct LmiBlock {
  SymmetricMatrix lhs;
  LmiKind kind = LmiKind::LTI;
  double rho_sq = 1.0;  ///< LTI context
  int k = -1;           ///< LTV context
  double t = 0.0;       ///< CT context
};

/// [[A'PA - rho^2 P, A'PB], [B'PA, B'PB]] - X on general matrices; B may
/// have several input columns (used by the identity-lift consistency tests).
SymmetricMatrix assemble_lti_lhs(const Matrix& A, const Matrix& B, const SymmetricMatrix& P,
                                 double rho_sq, const SymmetricMatrix& X);

LmiBlock assemble_lti(const Realization& real, const SymmetricMatrix& P, double rho_sq,
                      const SymmetricMatrix& X);

/// [[A'P_{k+1}A - P_k, A'P_{k+1}B], [B'P_{k+1}A, B'P_{k+1}B]] - X_k.
SymmetricMatrix assemble_ltv_lhs(const Matrix& A, const Matrix& B, const SymmetricMatrix& P_k,
                                 const SymmetricMatrix& P_next, const SymmetricMatrix& X_k);

LmiBlock assemble_ltv(const Realization& real, const SymmetricMatrix& P_k,
                      const SymmetricMatrix& P_next, const SymmetricMatrix& X_k, int k);

/// [[A'P + PA + Pdot, PB], [B'P, 0]] - X.
SymmetricMatrix assemble_ct_lhs(const Matrix& A, const Matrix& B, const SymmetricMatrix& P,
                                const SymmetricMatrix& P_dot, const SymmetricMatrix& X);

LmiBlock assemble_ct(const Matrix& A, const Matrix& B, const SymmetricMatrix& P,
                     const SymmetricMatrix& P_dot, const SymmetricMatrix& X, double t);

}  // namespace ratecert
