#include "ratecert/supply.hpp"

#include <cmath>
#include <stdexcept>

namespace ratecert {

std::string guarantee_name(GuaranteeForm form) {
  switch (form) {
    case GuaranteeForm::NonPositive: return "nonpositive";
    case GuaranteeForm::StepDecrease: return "step-decrease";
    case GuaranteeForm::NextGap: return "next-gap";
    case GuaranteeForm::GapCurrent: return "gap-current";
    case GuaranteeForm::RateDecrease: return "rate-decrease";
    case GuaranteeForm::SublinearWeighted: return "sublinear-weighted";
  }
  return "unknown";
}

Guarantee Guarantee::non_positive() { return {GuaranteeForm::NonPositive, 0.0, 0.0, false}; }
Guarantee Guarantee::step_decrease() { return {GuaranteeForm::StepDecrease, 1.0, -1.0, false}; }
Guarantee Guarantee::next_gap() { return {GuaranteeForm::NextGap, 0.0, -1.0, false}; }
Guarantee Guarantee::gap_current() { return {GuaranteeForm::GapCurrent, -1.0, 0.0, false}; }

Guarantee Guarantee::rate_decrease(double rho_sq) {
  if (!(rho_sq >= 0.0) || !(rho_sq <= 1.0)) throw std::invalid_argument("rate must satisfy 0 <= rho^2 <= 1");
  return {GuaranteeForm::RateDecrease, rho_sq, -1.0, false};
}

Guarantee Guarantee::sublinear_weighted(double mu_k, double mu_next) {
  if (!(mu_next >= mu_k) || !(mu_k >= 0.0)) throw std::invalid_argument("weights must be nondecreasing and nonnegative");
  return {GuaranteeForm::SublinearWeighted, mu_k, -mu_next, false};
}

SupplyRate gd_supply(const FunctionClass& fclass, GdSupplyMode mode) {
  const double m = fclass.m;
  const double L = fclass.L;
  SupplyRate supply;
  supply.params.m = m;
  supply.params.L = L;
  if (mode == GdSupplyMode::StronglyConvex) {
    if (!(m > 0.0)) throw std::invalid_argument("strongly convex supply requires m > 0");
    supply.X = SymmetricMatrix::from_rows({{2.0 * m * L, -(m + L)}, {-(m + L), 2.0}});
    supply.guarantee = Guarantee::non_positive();
  } else {
    supply.X = SymmetricMatrix::from_rows({{0.0, -0.5}, {-0.5, 0.5 / L}});
    supply.guarantee = Guarantee::gap_current();
  }
  return supply;
}

SupplyRate gd_supply_at_interpolant(const FunctionClass& fclass, double eta) {
  const SupplyRate base = gd_supply(fclass, GdSupplyMode::StronglyConvex);
  // Congruence with [y_k - x*; w_k] = T [x_k - x*; x_{k-1} - x*; w_k].
  const Matrix T = Matrix::from_rows({{1.0 + eta, -eta, 0.0}, {0.0, 0.0, 1.0}});
  SupplyRate supply;
  supply.X = SymmetricMatrix::symmetrized(T.transpose() * base.X.as_matrix() * T);
  supply.guarantee = Guarantee::non_positive();
  supply.params = base.params;
  supply.params.eta = eta;
  return supply;
}

namespace {

SymmetricMatrix half_scaled(std::initializer_list<std::initializer_list<double>> rows) {
  return 0.5 * SymmetricMatrix::from_rows(rows);
}

SymmetricMatrix momentum_curvature_block(double m, double beta, double corner) {
  return half_scaled({{beta * beta * m, -beta * beta * m, -beta},
                      {-beta * beta * m, beta * beta * m, beta},
                      {-beta, beta, corner}});
}

SymmetricMatrix anchored_curvature_block(double m, double beta, double corner) {
  return half_scaled({{(1.0 + beta) * (1.0 + beta) * m, -beta * (1.0 + beta) * m, -(1.0 + beta)},
                      {-beta * (1.0 + beta) * m, beta * beta * m, beta},
                      {-(1.0 + beta), beta, corner}});
}

}  // namespace

NesterovSupply nesterov_supply(const FunctionClass& fclass, double alpha, double beta, double rho_sq) {
  if (!(fclass.m > 0.0)) throw std::invalid_argument("nesterov supply requires m > 0");
  if (!(rho_sq >= 0.0) || !(rho_sq <= 1.0)) throw std::invalid_argument("rate must satisfy 0 <= rho^2 <= 1");
  const double corner = alpha * (2.0 - fclass.L * alpha);

  NesterovSupply out;
  const SymmetricMatrix step_block = momentum_curvature_block(fclass.m, beta, corner);
  const SymmetricMatrix gap_block = anchored_curvature_block(fclass.m, beta, corner);

  SupplyParams params;
  params.m = fclass.m;
  params.L = fclass.L;
  params.alpha = alpha;
  params.beta = beta;
  params.eta = beta;
  params.rho_sq = rho_sq;

  out.decrease = {step_block, Guarantee::step_decrease(), params};
  out.gap = {gap_block, Guarantee::next_gap(), params};
  out.combined = {rho_sq * step_block + (1.0 - rho_sq) * gap_block,
                  Guarantee::rate_decrease(rho_sq), params};

  // Internal consistency: the convex combination must match its closed form.
  const SymmetricMatrix closed = nesterov_supply_closed_form(fclass, alpha, beta, rho_sq);
  const double tol = 1e-12 * std::max(1.0, out.combined.X.max_abs());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (std::fabs(out.combined.X(i, j) - closed(i, j)) > tol) {
        throw std::logic_error("supply combination disagrees with closed form");
      }
    }
  }
  return out;
}

SymmetricMatrix nesterov_supply_closed_form(const FunctionClass& fclass, double alpha, double beta,
                                            double rho_sq) {
  const double m = fclass.m;
  const double L = fclass.L;
  const double c = rho_sq - 1.0 - beta;
  return half_scaled({{(1.0 + beta) * (1.0 + beta) * m - (1.0 + 2.0 * beta) * m * rho_sq, c * beta * m, c},
                      {c * beta * m, beta * beta * m, beta},
                      {c, beta, alpha * (2.0 - L * alpha)}});
}

GeneralSupply general_supply(const FunctionClass& fclass, double alpha, double beta, double eta,
                             double rho_sq) {
  if (!(fclass.m > 0.0)) throw std::invalid_argument("general supply requires m > 0");
  if (!(rho_sq >= 0.0) || !(rho_sq <= 1.0)) throw std::invalid_argument("rate must satisfy 0 <= rho^2 <= 1");
  const double m = fclass.m;
  const double L = fclass.L;
  const double delta = beta - eta;
  const double cross = (1.0 - L * alpha) * delta;

  GeneralSupply out;
  out.smoothness_step = half_scaled({{-L * delta * delta, L * delta * delta, -cross},
                                     {L * delta * delta, -L * delta * delta, cross},
                                     {-cross, cross, alpha * (2.0 - L * alpha)}});
  out.curvature_at_iterate = momentum_curvature_block(m, eta, 0.0);
  out.curvature_at_optimum = anchored_curvature_block(m, eta, 0.0);

  SupplyParams params;
  params.m = m;
  params.L = L;
  params.alpha = alpha;
  params.beta = beta;
  params.eta = eta;
  params.rho_sq = rho_sq;

  out.decrease = {out.smoothness_step + out.curvature_at_iterate, Guarantee::step_decrease(), params};
  out.gap = {out.smoothness_step + out.curvature_at_optimum, Guarantee::next_gap(), params};
  out.combined = {out.smoothness_step +
                      (rho_sq * out.curvature_at_iterate + (1.0 - rho_sq) * out.curvature_at_optimum),
                  Guarantee::rate_decrease(rho_sq), params};
  return out;
}

SublinearSupply sublinear_supply(double L, const ZetaSchedule& sched, int k) {
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  if (k < 0 || k > sched.horizon()) throw std::invalid_argument("step index out of horizon");
  const double beta = sched.beta(k);
  const double mu_k = sched.mu(k);
  const double mu_next = sched.mu(k + 1);

  SublinearSupply out;
  const SymmetricMatrix step_block =
      SymmetricMatrix::from_rows({{0.0, 0.0, -0.5 * beta},
                                  {0.0, 0.0, 0.5 * beta},
                                  {-0.5 * beta, 0.5 * beta, 0.5 / L}});
  const SymmetricMatrix gap_block =
      SymmetricMatrix::from_rows({{0.0, 0.0, -0.5 * (1.0 + beta)},
                                  {0.0, 0.0, 0.5 * beta},
                                  {-0.5 * (1.0 + beta), 0.5 * beta, 0.5 / L}});

  SupplyParams params;
  params.L = L;
  params.alpha = 1.0 / L;
  params.beta = beta;
  params.k = k;

  out.decrease = {step_block, Guarantee::step_decrease(), params};
  out.gap = {gap_block, Guarantee::next_gap(), params};
  out.combined = {mu_k * step_block + (mu_next - mu_k) * gap_block,
                  Guarantee::sublinear_weighted(mu_k, mu_next), params};
  return out;
}

SupplyRate combine(std::span<const SupplyRate> supplies, std::span<const double> lambda) {
  if (supplies.empty() || supplies.size() != lambda.size()) {
    throw std::invalid_argument("combine requires one weight per supply");
  }
  const int dim = supplies.front().X.dim();
  for (const SupplyRate& s : supplies) {
    if (s.X.dim() != dim) throw std::invalid_argument("combine dimension mismatch");
  }
  for (double w : lambda) {
    if (!(w >= 0.0)) throw std::invalid_argument("combination weights must be nonnegative");
  }

  // All rate-form participants must agree on form and coefficients.
  const SupplyRate* rate_form = nullptr;
  for (const SupplyRate& s : supplies) {
    if (s.guarantee.form == GuaranteeForm::NonPositive) continue;
    if (rate_form == nullptr) {
      rate_form = &s;
    } else if (s.guarantee.form != rate_form->guarantee.form ||
               s.guarantee.gap_coeff != rate_form->guarantee.gap_coeff ||
               s.guarantee.gap_next_coeff != rate_form->guarantee.gap_next_coeff) {
      throw std::invalid_argument("incompatible supply guarantees in combination");
    }
  }

  SupplyRate out;
  out.X = SymmetricMatrix(dim);
  double rate_weight = 0.0;
  bool nonpositive_active = false;
  for (size_t i = 0; i < supplies.size(); ++i) {
    out.X += lambda[i] * supplies[i].X;
    if (lambda[i] > 0.0) {
      if (supplies[i].guarantee.form == GuaranteeForm::NonPositive) {
        nonpositive_active = true;
      } else {
        rate_weight += lambda[i];
      }
    }
  }

  if (rate_form == nullptr || rate_weight == 0.0) {
    out.guarantee = Guarantee::non_positive();
  } else {
    out.guarantee.form = rate_form->guarantee.form;
    out.guarantee.gap_coeff = rate_weight * rate_form->guarantee.gap_coeff;
    out.guarantee.gap_next_coeff = rate_weight * rate_form->guarantee.gap_next_coeff;
    out.guarantee.mixed = nonpositive_active;
  }
  out.params = rate_form != nullptr ? rate_form->params : supplies.front().params;
  return out;
}

}  // namespace ratecert
