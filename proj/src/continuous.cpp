#include "ratecert/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ratecert/lmi.hpp"

namespace ratecert {

Matrix flow_state_matrix(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("the flow is singular at t <= 0");
  return Matrix::from_rows({{-3.0 / t, 0.0}, {1.0, 0.0}});
}

Matrix flow_input_matrix() { return Matrix::from_rows({{-1.0}, {0.0}}); }

SymmetricMatrix ContinuousCertificate::storage(double t) {
  return SymmetricMatrix::from_rows({{t * t / 2.0, t}, {t, 2.0}});
}

SymmetricMatrix ContinuousCertificate::storage_dot(double t) {
  return SymmetricMatrix::from_rows({{t, 1.0}, {1.0, 0.0}});
}

SymmetricMatrix ContinuousCertificate::supply(double t) {
  return -1.0 * SymmetricMatrix::from_rows(
                    {{0.0, 0.0, t * t / 2.0}, {0.0, 0.0, t}, {t * t / 2.0, t, 0.0}});
}

namespace {

struct FlowState {
  Vector y;
  Vector v;  ///< dY/dt
};

FlowState derivative(const TestFunction& f, const FlowState& s, double t) {
  FlowState d;
  d.y = s.v;
  d.v = f.gradient(s.y);
  for (size_t j = 0; j < d.v.size(); ++j) d.v[j] = -3.0 / t * s.v[j] - d.v[j];
  return d;
}

FlowState advanced(const FlowState& s, const FlowState& d, double step) {
  FlowState out = s;
  for (size_t j = 0; j < s.y.size(); ++j) {
    out.y[j] += step * d.y[j];
    out.v[j] += step * d.v[j];
  }
  return out;
}

}  // namespace

ContinuousTrajectory integrate(const TestFunction& f, const Vector& x0, double t0, double T,
                               double h) {
  if (!(t0 > 0.0)) throw std::invalid_argument("start time must be positive");
  if (!(T > t0)) throw std::invalid_argument("end time must exceed the start time");
  if (!(h > 0.0) || h > (T - t0) / 10.0) throw std::invalid_argument("step must be positive and at most (T - t0)/10");
  if (static_cast<int>(x0.size()) != f.dim()) throw std::invalid_argument("start dimension mismatch");

  ContinuousTrajectory traj;
  traj.h = h;
  const double blowup = 1e8 * (1.0 + norm(x0));

  FlowState s{x0, Vector(x0.size(), 0.0)};
  double t = t0;
  while (true) {
    Vector grad = f.gradient(s.y);
    FlowState k1;
    k1.y = s.v;
    k1.v.resize(grad.size());
    for (size_t j = 0; j < grad.size(); ++j) k1.v[j] = -3.0 / t * s.v[j] - grad[j];

    traj.t.push_back(t);
    traj.Y.push_back(s.y);
    traj.Ydot.push_back(s.v);
    traj.W.push_back(std::move(grad));
    traj.fY.push_back(f.value(s.y));

    if (t >= T - 1e-12 * T) break;
    const double step = std::min(h, T - t);

    const FlowState k2 = derivative(f, advanced(s, k1, 0.5 * step), t + 0.5 * step);
    const FlowState k3 = derivative(f, advanced(s, k2, 0.5 * step), t + 0.5 * step);
    const FlowState k4 = derivative(f, advanced(s, k3, step), t + step);
    for (size_t j = 0; j < s.y.size(); ++j) {
      s.y[j] += step / 6.0 * (k1.y[j] + 2.0 * (k2.y[j] + k3.y[j]) + k4.y[j]);
      s.v[j] += step / 6.0 * (k1.v[j] + 2.0 * (k2.v[j] + k3.v[j]) + k4.v[j]);
    }
    t += step;
    if (norm(s.y) > blowup) throw std::runtime_error("flow integration blew up");
  }
  return traj;
}

double ct_lyapunov(const ContinuousTrajectory& traj, const TestFunction& f, size_t i) {
  const double t = traj.t[i];
  const SymmetricMatrix P = ContinuousCertificate::storage(t);
  Vector diff(traj.Y[i].size());
  for (size_t j = 0; j < diff.size(); ++j) diff[j] = traj.Y[i][j] - f.x_star()[j];
  const double quad = P(0, 0) * dot(traj.Ydot[i], traj.Ydot[i]) +
                      2.0 * P(0, 1) * dot(traj.Ydot[i], diff) + P(1, 1) * dot(diff, diff);
  return quad + t * t * (traj.fY[i] - f.f_star());
}

CtAuditReport audit_ct(const ContinuousTrajectory& traj, const TestFunction& f) {
  const size_t n = traj.t.size();
  if (n < 3) throw std::invalid_argument("audit needs at least three grid points");

  CtAuditReport report;
  std::vector<double> lyap(n);
  for (size_t i = 0; i < n; ++i) lyap[i] = ct_lyapunov(traj, f, i);
  report.v0 = lyap[0];

  report.max_vdot = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i + 1 < n; ++i) {
    const double dv = (lyap[i + 1] - lyap[i - 1]) / (traj.t[i + 1] - traj.t[i - 1]);
    report.max_vdot = std::max(report.max_vdot, dv);
  }

  double running_min = lyap[0];
  report.monotone_drift = 0.0;
  for (size_t i = 0; i < n; ++i) {
    report.monotone_drift = std::max(report.monotone_drift, lyap[i] - running_min);
    running_min = std::min(running_min, lyap[i]);
  }

  const Matrix B = flow_input_matrix();
  report.max_lmi_residual = 0.0;
  report.max_supply_slack = -std::numeric_limits<double>::infinity();
  report.rate_bound_slack = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const double t = traj.t[i];
    const SymmetricMatrix lhs =
        assemble_ct_lhs(flow_state_matrix(t), B, ContinuousCertificate::storage(t),
                        ContinuousCertificate::storage_dot(t), ContinuousCertificate::supply(t));
    report.max_lmi_residual = std::max(report.max_lmi_residual, lhs.max_abs());

    // Supply value S(Lambda, W, t) against the hidden-energy derivative
    // dG/dt = 2t (f - f*) + t^2 <W, Ydot>.
    Vector diff(traj.Y[i].size());
    for (size_t j = 0; j < diff.size(); ++j) diff[j] = traj.Y[i][j] - f.x_star()[j];
    const double supply_value =
        -t * t * dot(traj.Ydot[i], traj.W[i]) - 2.0 * t * dot(diff, traj.W[i]);
    const double g_dot = 2.0 * t * (traj.fY[i] - f.f_star()) + t * t * dot(traj.W[i], traj.Ydot[i]);
    report.max_supply_slack = std::max(report.max_supply_slack, supply_value + g_dot);

    report.rate_bound_slack =
        std::max(report.rate_bound_slack, traj.fY[i] - f.f_star() - report.v0 / (t * t));
  }
  return report;
}

}  // namespace ratecert
