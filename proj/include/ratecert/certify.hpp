#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratecert/lmi.hpp"
#include "ratecert/methods.hpp"
#include "ratecert/sdp.hpp"
#include "ratecert/supply.hpp"

namespace ratecert {

enum class Provenance { Analytic, SolverFound, UserSupplied };

std::string provenance_name(Provenance p);

/// A linear-rate certificate: storage matrix plus the rate it certifies.
/// The Lyapunov function is xi' (P (x) I_p) xi + f_term_weight (f(x_k) - f*).
struct RateCertificate {
  double rho_sq = 1.0;
  SymmetricMatrix P;
  std::vector<double> lambda;  ///< combination weights, when used
  std::vector<double> residual_eigs;
  double f_term_weight = 0.0;
  std::string lyapunov_form;
  Provenance provenance = Provenance::UserSupplied;
};

struct VerifyReport {
  DefinitenessVerdict storage_psd;
  DefinitenessVerdict residual_nsd;
  SymmetricMatrix residual;
  std::vector<double> residual_eigs;
  bool holds() const { return storage_psd.holds && residual_nsd.holds; }
};

/// Supply rates used to certify `spec` at the given rate: one entry for
/// gradient descent and Nesterov, and for the general family the combined
/// supply plus the lifted descent supply available for weighting.
std::vector<SupplyRate> certification_supplies(const MethodSpec& spec, double rho_sq);

/// Assembles the dissipation block for the spec's supply at the given rate
/// and storage matrix and reports definiteness verdicts. Never searches.
/// tol < 0 selects 1e-8 * max(1, matrix magnitudes).
VerifyReport verify_certificate(const MethodSpec& spec, double rho_sq, const SymmetricMatrix& P,
                                const std::vector<double>* lambda = nullptr, double tol = -1.0);

/// Closed-form certificate for nominal Nesterov parameters: alpha = 1/L,
/// beta = (sqrt(kappa)-1)/(sqrt(kappa)+1), rho^2 = 1 - sqrt(m/L), and the
/// rank-one storage built from [sqrt(L/2), sqrt(m/2) - sqrt(L/2)].
RateCertificate analytic_nesterov(const FunctionClass& fclass);

/// The scalar residual multiplier of the analytic certificate,
/// m (sqrt(kappa) - 1)^3 / (2 (kappa + sqrt(kappa))).
double analytic_nesterov_residual_scale(const FunctionClass& fclass);

struct CertifyOptions {
  SolveOptions solve;
  bool strict_storage = false;    ///< require P >= eps I instead of P >= 0
  bool include_descent_supply = false;  ///< add the lifted descent supply with a solved weight
};

struct CertifyOutcome {
  FeasibilityResult result;
  std::optional<RateCertificate> certificate;  ///< present when Feasible
};

/// Searches for a storage matrix making the dissipation block hold at the
/// given rate.
CertifyOutcome certify_at_rate(const MethodSpec& spec, double rho_sq,
                               const CertifyOptions& options = {});

/// General accelerated method certification at a fixed rate; at eta == beta
/// this follows the same path as the Nesterov supply.
CertifyOutcome certify_general(const MethodSpec& spec, double rho_sq,
                               const CertifyOptions& options = {});

struct BisectOptions {
  double tol_rho_sq = 5e-4;
  CertifyOptions certify;
};

struct BisectResult {
  bool no_certificate = false;
  double rho_sq_star = 1.0;
  std::optional<RateCertificate> certificate;
  std::vector<std::pair<double, FeasibilityStatus>> probes;  ///< in probe order
  double inconclusive_lo = 1.0;  ///< band of Inconclusive probes, when any
  double inconclusive_hi = 0.0;
  bool monotone_warning = false;
};

/// Bisection for the smallest certifiable rate on a tol-spaced grid.
/// Non-Feasible probes move the lower end; the returned certificate is
/// re-verified independently.
BisectResult bisect_rate(const MethodSpec& spec, const BisectOptions& options = {});

/// O(1/k) gradient-descent certificate: storage weight 1/(2 alpha) with the
/// convex descent supply; holds exactly when alpha <= 1/L.
struct SublinearGdCertificate {
  double alpha = 0.0;
  double storage_weight = 0.0;  ///< p with V = p ||x - x*||^2
  SymmetricMatrix residual;
  DefinitenessVerdict residual_nsd;
  bool holds() const { return residual_nsd.holds; }
};

SublinearGdCertificate certify_sublinear_gd(double L, double alpha);

/// O(1/k^2) certificate family for the time-varying Nesterov schedule:
/// P_k = (L/2) outer([zeta_{k-1}, 1 - zeta_{k-1}]) with weights mu_k, checked
/// over the whole horizon.
struct SublinearCertificate {
  int K = 0;
  double L = 1.0;
  ZetaSchedule sched{0};
  double max_abs_residual = 0.0;
  double min_storage_eig = 0.0;  ///< min over k of the smallest eigenvalue of P_k
  std::string bound_constant;

  /// Storage matrix of the certificate family at step k in [0, K+1].
  SymmetricMatrix storage_at(int k) const;
};

SublinearCertificate certify_sublinear_nesterov(double L, int K);

/// Checks the geometric collapse of the time-varying family onto the single
/// fixed-rate block: with weights rho^{-2j} the block arriving at index j+1
/// equals rho^{-2(j+1)} times the fixed-rate block. Returns the max relative
/// deviation over the horizon.
double collapse_check(const MethodSpec& spec, double rho_sq, const SymmetricMatrix& P, int K);

}  // namespace ratecert
