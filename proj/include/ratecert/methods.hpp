#pragma once

#include <string>
#include <vector>

#include "ratecert/symmat.hpp"

namespace ratecert {

/// Smoothness / strong-convexity constants of the objective class.
struct FunctionClass {
  double m = 0.0;
  double L = 1.0;

  FunctionClass() = default;
  FunctionClass(double m_in, double L_in);
  /// L/m; only defined for strongly convex classes.
  double kappa() const;
};

enum class MethodFamily {
  GradientDescent,
  Nesterov,
  HeavyBall,
  GeneralAccelerated,
  NesterovSublinear,
};

std::string family_name(MethodFamily family);

/// A first-order method instance. beta drives the extrapolation of the
/// iterate update, eta the interpolation point the gradient is taken at;
/// they coincide for Nesterov, and eta = 0 recovers Heavy-ball.
struct MethodSpec {
  MethodFamily family = MethodFamily::GradientDescent;
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  FunctionClass fclass;
  bool time_varying = false;

  static MethodSpec gradient_descent(double alpha, FunctionClass fclass);
  static MethodSpec nesterov(double alpha, double beta, FunctionClass fclass);
  /// alpha = 1/L, beta = (sqrt(kappa)-1)/(sqrt(kappa)+1).
  static MethodSpec nominal_nesterov(FunctionClass fclass);
  static MethodSpec heavy_ball(double alpha, double beta, FunctionClass fclass);
  static MethodSpec general(double alpha, double beta, double eta, FunctionClass fclass);
  /// Time-varying schedule with alpha_k = 1/L; momentum comes from the zeta
  /// recursion, see ZetaSchedule.
  static MethodSpec nesterov_sublinear(double L);

  int state_dim() const { return family == MethodFamily::GradientDescent ? 1 : 2; }
};

/// Reduced state-space model x_{k+1}-block = A xi_k + B w_k with the
/// coordinate-wise identity factor removed.
struct Realization {
  Matrix A;
  Matrix B;  ///< column in reduced space
  int state_dim = 0;
};

/// The scalar recursion generating the time-varying momentum and the
/// nondecreasing weights used by the sublinear certificates.
///   zeta_{-1} = 0,  zeta_{k+1} = (1 + sqrt(1 + 4 zeta_k^2))/2,
///   beta_k = (zeta_{k-1} - 1)/zeta_k,  mu_k = zeta_{k-1}^2.
class ZetaSchedule {
 public:
  explicit ZetaSchedule(int K);

  int horizon() const { return K_; }
  /// zeta_k for k in [-1, K].
  double zeta(int k) const;
  /// beta_k for k in [0, K].
  double beta(int k) const;
  /// mu_k = zeta_{k-1}^2 for k in [0, K+1]; satisfies mu_{k+1} - mu_k = zeta_k.
  double mu(int k) const;

 private:
  int K_ = 0;
  std::vector<double> zeta_;  // zeta_[i] = zeta_{i-1}
};

ZetaSchedule zeta_schedule(int K);

/// Realization of a time-invariant method.
Realization realize(const MethodSpec& spec);

/// Realization of the time-varying schedule at step k.
Realization realize_at(int k, const ZetaSchedule& sched, double L);

}  // namespace ratecert
