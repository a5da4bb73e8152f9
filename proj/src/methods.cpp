#include "ratecert/methods.hpp"

#include <cmath>
#include <stdexcept>

namespace ratecert {

FunctionClass::FunctionClass(double m_in, double L_in) : m(m_in), L(L_in) {
  if (!(L > 0.0) || !(m >= 0.0) || !(m <= L) || !std::isfinite(L)) {
    throw std::invalid_argument("function class requires 0 <= m <= L, L > 0");
  }
}

double FunctionClass::kappa() const {
  if (!(m > 0.0)) throw std::invalid_argument("kappa undefined for m = 0");
  return L / m;
}

std::string family_name(MethodFamily family) {
  switch (family) {
    case MethodFamily::GradientDescent: return "gd";
    case MethodFamily::Nesterov: return "nesterov";
    case MethodFamily::HeavyBall: return "heavyball";
    case MethodFamily::GeneralAccelerated: return "general";
    case MethodFamily::NesterovSublinear: return "nesterov-sublinear";
  }
  return "unknown";
}

namespace {

void check_step(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("step size must be positive");
}

}  // namespace

MethodSpec MethodSpec::gradient_descent(double alpha, FunctionClass fclass) {
  check_step(alpha);
  return {MethodFamily::GradientDescent, alpha, 0.0, 0.0, fclass, false};
}

MethodSpec MethodSpec::nesterov(double alpha, double beta, FunctionClass fclass) {
  check_step(alpha);
  return {MethodFamily::Nesterov, alpha, beta, beta, fclass, false};
}

MethodSpec MethodSpec::nominal_nesterov(FunctionClass fclass) {
  const double rk = std::sqrt(fclass.kappa());
  return nesterov(1.0 / fclass.L, (rk - 1.0) / (rk + 1.0), fclass);
}

MethodSpec MethodSpec::heavy_ball(double alpha, double beta, FunctionClass fclass) {
  check_step(alpha);
  return {MethodFamily::HeavyBall, alpha, beta, 0.0, fclass, false};
}

MethodSpec MethodSpec::general(double alpha, double beta, double eta, FunctionClass fclass) {
  check_step(alpha);
  return {MethodFamily::GeneralAccelerated, alpha, beta, eta, fclass, false};
}

MethodSpec MethodSpec::nesterov_sublinear(double L) {
  FunctionClass fclass(0.0, L);
  return {MethodFamily::NesterovSublinear, 1.0 / L, 0.0, 0.0, fclass, true};
}

ZetaSchedule::ZetaSchedule(int K) : K_(K) {
  if (K < 0) throw std::invalid_argument("schedule horizon must be nonnegative");
  zeta_.resize(static_cast<size_t>(K) + 2);
  zeta_[0] = 0.0;  // zeta_{-1}
  for (int k = 0; k <= K; ++k) {
    const double prev = zeta_[static_cast<size_t>(k)];
    zeta_[static_cast<size_t>(k) + 1] = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * prev * prev));
  }
}

double ZetaSchedule::zeta(int k) const {
  if (k < -1 || k > K_) throw std::invalid_argument("zeta index out of horizon");
  return zeta_[static_cast<size_t>(k) + 1];
}

double ZetaSchedule::beta(int k) const {
  if (k < 0 || k > K_) throw std::invalid_argument("beta index out of horizon");
  return (zeta(k - 1) - 1.0) / zeta(k);
}

double ZetaSchedule::mu(int k) const {
  if (k < 0 || k > K_ + 1) throw std::invalid_argument("mu index out of horizon");
  const double z = zeta_[static_cast<size_t>(k)];  // zeta_{k-1}
  return z * z;
}

ZetaSchedule zeta_schedule(int K) { return ZetaSchedule(K); }

namespace {

Realization accelerated_realization(double alpha, double beta) {
  Realization real;
  real.state_dim = 2;
  real.A = Matrix::from_rows({{1.0 + beta, -beta}, {1.0, 0.0}});
  real.B = Matrix::from_rows({{-alpha}, {0.0}});
  return real;
}

}  // namespace

Realization realize(const MethodSpec& spec) {
  if (spec.time_varying) {
    throw std::invalid_argument("time-varying method: use realize_at with a schedule");
  }
  if (spec.family == MethodFamily::GradientDescent) {
    Realization real;
    real.state_dim = 1;
    real.A = Matrix::from_rows({{1.0}});
    real.B = Matrix::from_rows({{-spec.alpha}});
    return real;
  }
  return accelerated_realization(spec.alpha, spec.beta);
}

Realization realize_at(int k, const ZetaSchedule& sched, double L) {
  if (k < 0 || k > sched.horizon()) throw std::invalid_argument("step index out of horizon");
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  return accelerated_realization(1.0 / L, sched.beta(k));
}

}  // namespace ratecert
