#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratecert/certify.hpp"
#include "ratecert/methods.hpp"
#include "ratecert/supply.hpp"

namespace ratecert {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

enum class TestFunctionKind { QuadraticSC, QuadraticConvex, LogSumExpReg };

std::string kind_name(TestFunctionKind kind);

/// Synthetic objective with certified smoothness and strong-convexity
/// constants, a known minimizer and minimum value.
class TestFunction {
 public:
  TestFunctionKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const FunctionClass& fclass() const { return fclass_; }
  double f_star() const { return f_star_; }
  const Vector& x_star() const { return x_star_; }

  double value(std::span<const double> x) const;
  Vector gradient(std::span<const double> x) const;

  friend TestFunction make_function(TestFunctionKind kind, double m, double L, int p, uint64_t seed);

 private:
  TestFunctionKind kind_ = TestFunctionKind::QuadraticSC;
  int dim_ = 0;
  FunctionClass fclass_;
  double f_star_ = 0.0;
  Vector x_star_;
  // quadratics: Q = basis diag(spectrum) basis', f = (x-center)'Q(x-center)/2 + offset
  Vector basis_;  // dim x dim, row-major
  Vector spectrum_;
  Vector center_;
  double offset_ = 0.0;
  // smoothed max: tau log sum exp((a_i'x + b_i)/tau) + (m/2)||x||^2
  Vector terms_a_;  // n_terms x dim, row-major
  Vector terms_b_;
  double tau_ = 1.0;
  int n_terms_ = 0;
};

/// QuadraticSC draws a spectrum spanning [m, L] with both endpoints present;
/// QuadraticConvex is built rank-deficient on purpose with the minimum-norm
/// minimizer recorded; LogSumExpReg is a smoothed max plus an (m/2)||x||^2
/// ridge whose certified L is conservative and whose minimum is located by a
/// high-precision descent oracle.
TestFunction make_function(TestFunctionKind kind, double m, double L, int p, uint64_t seed);

/// Signed slacks of the two defining function-class inequalities at (x, y);
/// both are <= 0 for any function actually in the certified class.
struct PairSlack {
  double strong_convexity;  ///< grad f(y)'(x-y) + (m/2)||x-y||^2 - (f(x) - f(y))
  double smoothness;        ///< grad f(y)'(y-x) - (L/2)||y-x||^2 - (f(y) - f(x))
};

PairSlack function_inequality_slacks(const TestFunction& f, std::span<const double> x,
                                     std::span<const double> y);

struct Trajectory {
  MethodSpec spec;
  int K = 0;
  int dim = 0;
  std::vector<Vector> x;   ///< x[0] holds x_{-1}; x_at(k) = x[k+1]
  std::vector<Vector> y;   ///< interpolation points y_0..y_K
  std::vector<Vector> w;   ///< gradients at the interpolation points
  std::vector<double> fx;  ///< f(x_0)..f(x_K)
  std::optional<ZetaSchedule> sched;  ///< present for schedule-driven runs

  const Vector& x_at(int k) const { return x[static_cast<size_t>(k) + 1]; }
};

/// Runs the method for K steps from x0 with the convention x_{-1} = x_0.
/// Aborts when the distance to the minimizer exceeds 1e8 times its initial
/// value.
Trajectory run(const MethodSpec& spec, const TestFunction& f, const Vector& x0, int K);

/// Recomputes every stored iterate from its predecessors with the exact
/// update expressions; true when the trajectory is bit-for-bit reproducible.
bool replay_matches(const Trajectory& traj);

/// Value of the supply quadratic form z'(X (x) I_p)z at step k, with z the
/// stacked state/input blocks of the trajectory.
double supply_value_at(const Trajectory& traj, const TestFunction& f, const SymmetricMatrix& X, int k);

/// xi_k'(P (x) I_p)xi_k for a 2-block state (or 1-block for gradient descent).
double storage_value_at(const Trajectory& traj, const TestFunction& f, const SymmetricMatrix& P, int k);

/// Full Lyapunov value of a rate certificate at step k.
double lyapunov_value(const Trajectory& traj, const TestFunction& f, const RateCertificate& cert, int k);

struct AuditArtifacts {
  std::vector<SupplyRate> supplies;   ///< fixed supplies audited with their guarantees
  bool schedule_supplies = false;     ///< audit the per-step schedule supplies
  std::optional<RateCertificate> certificate;
  std::optional<SublinearGdCertificate> sublinear_gd;
  bool sublinear_bound = false;       ///< weighted value bound for schedule runs
  bool function_inequalities = false; ///< class inequalities along the trajectory
  double tol = -1.0;                  ///< < 0 selects 1e-8 * L * ||x0 - x*||^2
};

/// Per-step signed slacks of every audited inequality; the CSV export and
/// the pass/fail audit both read from this table.
struct AuditTable {
  std::vector<std::string> slack_names;
  struct Row {
    int k = 0;
    double f_gap = 0.0;
    double grad_norm = 0.0;
    double lyapunov = 0.0;  ///< NaN when no certificate applies
    std::vector<double> slacks;  ///< NaN where a check is undefined at this k
  };
  std::vector<Row> rows;
};

AuditTable audit_table(const Trajectory& traj, const TestFunction& f, const AuditArtifacts& artifacts);

struct SlackSeries {
  std::string name;
  double max_slack = 0.0;
  int argmax_k = -1;
};

struct AuditReport {
  double scale = 0.0;  ///< L * ||x0 - x*||^2
  double tol = 0.0;
  std::vector<SlackSeries> checks;
  double max_slack() const;
  bool pass() const;
};

AuditReport audit(const Trajectory& traj, const TestFunction& f, const AuditArtifacts& artifacts);

}  // namespace ratecert
