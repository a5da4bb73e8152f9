#pragma once

#include <vector>

#include "ratecert/simulate.hpp"
#include "ratecert/symmat.hpp"

namespace ratecert {

/// State samples of the accelerated-gradient flow
///   Ydotdot + (3/t) Ydot + grad f(Y) = 0
/// integrated from t0 > 0 (the damping coefficient is singular at t = 0).
struct ContinuousTrajectory {
  std::vector<double> t;
  std::vector<Vector> Y;
  std::vector<Vector> Ydot;
  std::vector<Vector> W;  ///< grad f(Y)
  std::vector<double> fY;
  double h = 0.0;
  const char* integrator = "rk4";
};

/// Time-varying realization of the flow in reduced coordinates
/// Lambda = [Ydot; Y - x*].
Matrix flow_state_matrix(double t);
Matrix flow_input_matrix();

/// Storage weight family of the continuous certificate and its companions.
struct ContinuousCertificate {
  static SymmetricMatrix storage(double t);      ///< [[t^2/2, t], [t, 2]]
  static SymmetricMatrix storage_dot(double t);  ///< [[t, 1], [1, 0]]
  static SymmetricMatrix supply(double t);       ///< -[[0,0,t^2/2],[0,0,t],[t^2/2,t,0]]
};

/// Classical 4th-order one-step integration of the first-order form with a
/// fixed step (the final step is clipped to land on T).
ContinuousTrajectory integrate(const TestFunction& f, const Vector& x0, double t0, double T, double h);

struct CtAuditReport {
  double v0 = 0.0;                 ///< Lyapunov value at the initial time
  double max_vdot = 0.0;           ///< max central-difference derivative of the Lyapunov value
  double monotone_drift = 0.0;     ///< max rise above the running minimum
  double max_lmi_residual = 0.0;   ///< max |entry| of the certificate block over the grid
  double max_supply_slack = 0.0;   ///< pointwise S + dG/dt <= 0 violation
  double rate_bound_slack = 0.0;   ///< max of f(Y(t)) - f* - V(t0)/t^2
};

/// Audits the dissipation certificate along an integrated trajectory: the
/// Lyapunov value must not increase (checked by central differences, kept
/// independent of the certificate's own algebra), the certificate block must
/// vanish on the grid, and the supply must dominate the hidden-energy
/// derivative pointwise.
CtAuditReport audit_ct(const ContinuousTrajectory& traj, const TestFunction& f);

/// Lyapunov value Lambda' (P(t) (x) I_p) Lambda + t^2 (f(Y) - f*) at grid
/// index i.
double ct_lyapunov(const ContinuousTrajectory& traj, const TestFunction& f, size_t i);

}  // namespace ratecert
