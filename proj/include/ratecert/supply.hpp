#pragma once

#include <span>
#include <string>
#include <vector>

#include "ratecert/methods.hpp"
#include "ratecert/symmat.hpp"

namespace ratecert {

/// What a supply rate promises about the energy it delivers. Every form in
/// use bounds the quadratic form by a linear expression in the current and
/// next optimality gaps:
///   S(xi_k, w_k) <= gap_coeff * (f(x_k) - f*) + gap_next_coeff * (f(x_{k+1}) - f*).
enum class GuaranteeForm {
  NonPositive,        ///< S <= 0
  StepDecrease,       ///< S <= f(x_k) - f(x_{k+1})
  NextGap,            ///< S <= f* - f(x_{k+1})
  GapCurrent,         ///< S <= f* - f(x_k)
  RateDecrease,       ///< S <= rho^2 (f(x_k) - f*) - (f(x_{k+1}) - f*)
  SublinearWeighted,  ///< S <= mu_k (f(x_k) - f*) - mu_{k+1} (f(x_{k+1}) - f*)
};

std::string guarantee_name(GuaranteeForm form);

struct Guarantee {
  GuaranteeForm form = GuaranteeForm::NonPositive;
  double gap_coeff = 0.0;       ///< weight on f(x_k) - f*
  double gap_next_coeff = 0.0;  ///< weight on f(x_{k+1}) - f*
  bool mixed = false;           ///< combination mixed a "<= 0" supply into a rate form

  double rhs(double gap_k, double gap_next) const {
    return gap_coeff * gap_k + gap_next_coeff * gap_next;
  }

  static Guarantee non_positive();
  static Guarantee step_decrease();
  static Guarantee next_gap();
  static Guarantee gap_current();
  static Guarantee rate_decrease(double rho_sq);
  static Guarantee sublinear_weighted(double mu_k, double mu_next);
};

/// Parameters a supply rate was built from, for report provenance.
struct SupplyParams {
  double m = 0.0;
  double L = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  double rho_sq = 1.0;
  int k = -1;  ///< step index for time-varying supplies
};

struct SupplyRate {
  SymmetricMatrix X;  ///< 2x2 for gradient descent, 3x3 for accelerated
  Guarantee guarantee;
  SupplyParams params;
};

enum class GdSupplyMode { StronglyConvex, Convex };

/// Co-coercivity supply for gradient descent. Strongly convex mode certifies
/// S <= 0; convex mode certifies S <= f* - f(x_k).
SupplyRate gd_supply(const FunctionClass& fclass, GdSupplyMode mode);

/// Co-coercivity supply expressed on the accelerated 3-block coordinates,
/// with the gradient taken at the interpolation point y_k = (1+eta) x_k -
/// eta x_{k-1}. Used when mixing the plain descent supply into accelerated
/// certifications.
SupplyRate gd_supply_at_interpolant(const FunctionClass& fclass, double eta);

struct NesterovSupply {
  SupplyRate decrease;  ///< bounds f(x_k) - f(x_{k+1})
  SupplyRate gap;       ///< bounds f* - f(x_{k+1})
  SupplyRate combined;  ///< rho^2-weighted mix of the two, RateDecrease
};

/// Supply-rate family for Nesterov's method with strongly convex objectives.
/// The combined matrix is cross-checked entrywise against its closed form.
NesterovSupply nesterov_supply(const FunctionClass& fclass, double alpha, double beta, double rho_sq);

/// Closed-form expression of the combined Nesterov supply matrix.
SymmetricMatrix nesterov_supply_closed_form(const FunctionClass& fclass, double alpha, double beta,
                                            double rho_sq);

struct GeneralSupply {
  /// Smoothness block of the step; carries delta = beta - eta.
  SymmetricMatrix smoothness_step;
  /// Strong-convexity block anchored at the current iterate.
  SymmetricMatrix curvature_at_iterate;
  /// Strong-convexity block anchored at the optimum.
  SymmetricMatrix curvature_at_optimum;
  SupplyRate decrease;  ///< smoothness_step + curvature_at_iterate, StepDecrease
  SupplyRate gap;       ///< smoothness_step + curvature_at_optimum, NextGap
  SupplyRate combined;  ///< rho^2-weighted mix of the two, RateDecrease
};

/// Supply-rate family for the generalized accelerated method (beta drives
/// the update, eta the gradient interpolation). At eta = beta this
/// reproduces nesterov_supply entrywise.
GeneralSupply general_supply(const FunctionClass& fclass, double alpha, double beta, double eta,
                             double rho_sq);

struct SublinearSupply {
  SupplyRate decrease;  ///< bounds f(x_k) - f(x_{k+1})
  SupplyRate gap;       ///< bounds f* - f(x_{k+1})
  SupplyRate combined;  ///< mu_k-weighted mix of the two, SublinearWeighted
};

/// Time-varying supply for the sublinear Nesterov schedule at step k.
SublinearSupply sublinear_supply(double L, const ZetaSchedule& sched, int k);

/// Nonnegative combination sum(lambda_i X_i). Guarantees must be compatible:
/// a "<= 0" supply combines with anything; rate-form supplies combine only
/// when their forms and coefficients match. Mixtures of "<= 0" supplies into
/// a rate form are legal and flagged on the result.
SupplyRate combine(std::span<const SupplyRate> supplies, std::span<const double> lambda);

}  // namespace ratecert
