#include "ratecert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ratecert {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::SolverFound: return "solver";
    case Provenance::UserSupplied: return "user";
  }
  return "unknown";
}

namespace {

int storage_var_count(int state_dim) { return state_dim == 1 ? 1 : 3; }

SymmetricMatrix storage_from_vars(int state_dim, const std::vector<double>& v, int offset = 0) {
  if (state_dim == 1) return SymmetricMatrix::from_rows({{v[offset]}});
  SymmetricMatrix p(2);
  p.set(0, 0, v[offset]);
  p.set(0, 1, v[offset + 1]);
  p.set(1, 1, v[offset + 2]);
  return p;
}

/// Decrease-form and gap-form component matrices whose rho^2-weighted
/// combination is the certification supply; shared by the fixed-rate path
/// and the geometric collapse check.
struct SupplyComponents {
  SymmetricMatrix decrease;
  SymmetricMatrix gap;
};

SupplyComponents supply_components(const MethodSpec& spec, double rho_sq) {
  switch (spec.family) {
    case MethodFamily::GradientDescent: {
      const SupplyRate s = gd_supply(spec.fclass, GdSupplyMode::StronglyConvex);
      return {s.X, s.X};
    }
    case MethodFamily::Nesterov: {
      const NesterovSupply s = nesterov_supply(spec.fclass, spec.alpha, spec.beta, rho_sq);
      return {s.decrease.X, s.gap.X};
    }
    case MethodFamily::HeavyBall:
    case MethodFamily::GeneralAccelerated: {
      const GeneralSupply s = general_supply(spec.fclass, spec.alpha, spec.beta, spec.eta, rho_sq);
      return {s.decrease.X, s.gap.X};
    }
    case MethodFamily::NesterovSublinear:
      break;
  }
  throw std::invalid_argument("time-varying schedule has no fixed-rate supply");
}

bool is_accelerated(const MethodSpec& spec) {
  return spec.family == MethodFamily::Nesterov || spec.family == MethodFamily::HeavyBall ||
         spec.family == MethodFamily::GeneralAccelerated;
}

double certification_scale(const MethodSpec& spec) {
  const double L = spec.fclass.L;
  return spec.family == MethodFamily::GradientDescent ? std::max(1.0, L * L) : std::max(1.0, L);
}

}  // namespace

std::vector<SupplyRate> certification_supplies(const MethodSpec& spec, double rho_sq) {
  switch (spec.family) {
    case MethodFamily::GradientDescent:
      return {gd_supply(spec.fclass, GdSupplyMode::StronglyConvex)};
    case MethodFamily::Nesterov:
      return {nesterov_supply(spec.fclass, spec.alpha, spec.beta, rho_sq).combined};
    case MethodFamily::HeavyBall:
    case MethodFamily::GeneralAccelerated:
      return {general_supply(spec.fclass, spec.alpha, spec.beta, spec.eta, rho_sq).combined,
              gd_supply_at_interpolant(spec.fclass, spec.eta)};
    case MethodFamily::NesterovSublinear:
      break;
  }
  throw std::invalid_argument("time-varying schedule has no fixed-rate supply");
}

VerifyReport verify_certificate(const MethodSpec& spec, double rho_sq, const SymmetricMatrix& P,
                                const std::vector<double>* lambda, double tol) {
  const std::vector<SupplyRate> supplies = certification_supplies(spec, rho_sq);
  std::vector<double> weights(supplies.size(), 0.0);
  if (lambda != nullptr) {
    if (lambda->size() != supplies.size()) throw std::invalid_argument("weight count mismatch");
    weights = *lambda;
  } else {
    weights[0] = 1.0;
  }
  const SupplyRate supply = combine(supplies, weights);

  const Realization real = realize(spec);
  const LmiBlock block = assemble_lti(real, P, rho_sq, supply.X);
  if (tol < 0.0) tol = 1e-8 * std::max({1.0, supply.X.max_abs(), P.max_abs()});

  VerifyReport report;
  report.storage_psd = definiteness(P, DefinitenessSense::PSD, tol);
  report.residual_nsd = definiteness(block.lhs, DefinitenessSense::NSD, tol);
  report.residual = block.lhs;
  report.residual_eigs = eigenvalues(block.lhs);
  return report;
}

RateCertificate analytic_nesterov(const FunctionClass& fclass) {
  if (!(fclass.m > 0.0)) throw std::invalid_argument("analytic certificate requires m > 0");
  const double rho_sq = 1.0 - std::sqrt(fclass.m / fclass.L);
  const std::vector<double> direction = {std::sqrt(fclass.L / 2.0),
                                         std::sqrt(fclass.m / 2.0) - std::sqrt(fclass.L / 2.0)};

  RateCertificate cert;
  cert.rho_sq = rho_sq;
  cert.P = SymmetricMatrix::outer(direction);
  cert.f_term_weight = 1.0;
  cert.lyapunov_form = "xi'(P (x) I)xi + f(x_k) - f*";
  cert.provenance = Provenance::Analytic;

  const MethodSpec spec = MethodSpec::nominal_nesterov(fclass);
  const VerifyReport report = verify_certificate(spec, rho_sq, cert.P);
  if (!report.holds()) throw std::logic_error("analytic certificate failed verification");
  cert.residual_eigs = report.residual_eigs;
  return cert;
}

double analytic_nesterov_residual_scale(const FunctionClass& fclass) {
  const double rk = std::sqrt(fclass.kappa());
  return fclass.m * (rk - 1.0) * (rk - 1.0) * (rk - 1.0) / (2.0 * (fclass.kappa() + rk));
}

CertifyOutcome certify_at_rate(const MethodSpec& spec, double rho_sq, const CertifyOptions& options) {
  const std::vector<SupplyRate> supplies = certification_supplies(spec, rho_sq);
  const Realization real = realize(spec);
  const int p_vars = storage_var_count(real.state_dim);
  const bool with_weight = options.include_descent_supply && supplies.size() > 1;

  FeasibilityProblem problem;
  problem.var_count = p_vars + (with_weight ? 1 : 0);
  problem.scale = certification_scale(spec);
  const double strict_shift = options.strict_storage ? 1e-10 * problem.scale : 0.0;

  problem.assemble = [=, state_dim = real.state_dim](const std::vector<double>& v) {
    const SymmetricMatrix P = storage_from_vars(state_dim, v);
    SymmetricMatrix X = supplies[0].X;
    std::vector<ConstraintBlock> blocks;
    if (with_weight) {
      const double weight = v[p_vars];
      X += weight * supplies[1].X;
      blocks.push_back({SymmetricMatrix::from_rows({{weight}}), BlockSense::PSD, "weight"});
    }
    SymmetricMatrix storage_block = P;
    if (strict_shift > 0.0) {
      storage_block = storage_block - strict_shift * SymmetricMatrix::identity(P.dim());
    }
    blocks.push_back({storage_block, BlockSense::PSD, "storage"});
    blocks.push_back({assemble_lti(real, P, rho_sq, X).lhs, BlockSense::NSD, "dissipation"});
    return blocks;
  };

  CertifyOutcome outcome;
  outcome.result = solve(problem, options.solve);
  if (outcome.result.status == FeasibilityStatus::Feasible) {
    RateCertificate cert;
    cert.rho_sq = rho_sq;
    cert.P = storage_from_vars(real.state_dim, outcome.result.variables);
    if (with_weight) cert.lambda = {1.0, outcome.result.variables[p_vars]};
    cert.f_term_weight = is_accelerated(spec) ? 1.0 : 0.0;
    cert.lyapunov_form = is_accelerated(spec) ? "xi'(P (x) I)xi + f(x_k) - f*" : "xi'(P (x) I)xi";
    cert.provenance = Provenance::SolverFound;
    const std::vector<double>* lam = cert.lambda.empty() ? nullptr : &cert.lambda;
    cert.residual_eigs = verify_certificate(spec, rho_sq, cert.P, lam).residual_eigs;
    outcome.certificate = cert;
  }
  return outcome;
}

CertifyOutcome certify_general(const MethodSpec& spec, double rho_sq, const CertifyOptions& options) {
  if (spec.family != MethodFamily::GeneralAccelerated && spec.family != MethodFamily::HeavyBall &&
      spec.family != MethodFamily::Nesterov) {
    throw std::invalid_argument("general certification expects an accelerated method");
  }
  return certify_at_rate(spec, rho_sq, options);
}

BisectResult bisect_rate(const MethodSpec& spec, const BisectOptions& options) {
  if (!(options.tol_rho_sq > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
  BisectResult result;

  auto probe = [&](double rho_sq) {
    CertifyOutcome outcome = certify_at_rate(spec, rho_sq, options.certify);
    result.probes.emplace_back(rho_sq, outcome.result.status);
    if (outcome.result.status == FeasibilityStatus::Inconclusive) {
      result.inconclusive_lo = std::min(result.inconclusive_lo, rho_sq);
      result.inconclusive_hi = std::max(result.inconclusive_hi, rho_sq);
    }
    return outcome;
  };

  CertifyOutcome top = probe(1.0);
  if (top.result.status != FeasibilityStatus::Feasible) {
    result.no_certificate = true;
    return result;
  }
  double hi = 1.0;
  std::optional<RateCertificate> best = top.certificate;

  CertifyOutcome bottom = probe(0.0);
  double lo = 0.0;
  if (bottom.result.status == FeasibilityStatus::Feasible) {
    result.rho_sq_star = 0.0;
    result.certificate = bottom.certificate;
    return result;
  }

  while (hi - lo > options.tol_rho_sq) {
    const double mid = 0.5 * (lo + hi);
    const CertifyOutcome outcome = probe(mid);
    if (outcome.result.status == FeasibilityStatus::Feasible) {
      hi = mid;
      best = outcome.certificate;
    } else {
      lo = mid;
    }
  }

  result.rho_sq_star = hi;
  result.certificate = best;

  // Monotonicity spot-check above the crossing; feasibility is expected to
  // be monotone in the rate but that is unproven, so observations to the
  // contrary are surfaced instead of silently accepted.
  const double above = std::min(1.0, hi + options.tol_rho_sq);
  if (above > hi) {
    const CertifyOutcome outcome = probe(above);
    if (outcome.result.status != FeasibilityStatus::Feasible) result.monotone_warning = true;
  }
  for (const auto& [rho_feasible, status_feasible] : result.probes) {
    if (status_feasible != FeasibilityStatus::Feasible) continue;
    for (const auto& [rho_other, status_other] : result.probes) {
      if (rho_other > rho_feasible && status_other != FeasibilityStatus::Feasible) {
        result.monotone_warning = true;
      }
    }
  }
  return result;
}

SublinearGdCertificate certify_sublinear_gd(double L, double alpha) {
  if (!(L > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("L and alpha must be positive");
  SublinearGdCertificate cert;
  cert.alpha = alpha;
  cert.storage_weight = 0.5 / alpha;

  const MethodSpec spec = MethodSpec::gradient_descent(alpha, FunctionClass(0.0, L));
  const SupplyRate supply = gd_supply(spec.fclass, GdSupplyMode::Convex);
  const SymmetricMatrix P = SymmetricMatrix::from_rows({{cert.storage_weight}});
  cert.residual = assemble_lti(realize(spec), P, 1.0, supply.X).lhs;
  cert.residual_nsd = definiteness(cert.residual, DefinitenessSense::NSD,
                                   1e-12 * std::max(1.0, cert.residual.max_abs()));
  return cert;
}

SymmetricMatrix SublinearCertificate::storage_at(int k) const {
  const std::vector<double> direction = {sched.zeta(k - 1), 1.0 - sched.zeta(k - 1)};
  return 0.5 * L * SymmetricMatrix::outer(direction);
}

SublinearCertificate certify_sublinear_nesterov(double L, int K) {
  if (K < 1) throw std::invalid_argument("horizon must be at least 1");
  SublinearCertificate cert;
  cert.K = K;
  cert.L = L;
  cert.sched = ZetaSchedule(K);
  cert.bound_constant = "mu_0 (f(x_0) - f*) + (L/2)||x_0 - x*||^2";
  cert.min_storage_eig = 0.0;

  for (int k = 0; k <= K; ++k) {
    const Realization real = realize_at(k, cert.sched, L);
    const SymmetricMatrix P_k = cert.storage_at(k);
    const SymmetricMatrix P_next = cert.storage_at(k + 1);
    const SublinearSupply supply = sublinear_supply(L, cert.sched, k);
    const LmiBlock block = assemble_ltv(real, P_k, P_next, supply.combined.X, k);
    cert.max_abs_residual = std::max(cert.max_abs_residual, block.lhs.max_abs());
    cert.min_storage_eig = std::min(cert.min_storage_eig, eigenvalues(P_k).front());
  }
  return cert;
}

double collapse_check(const MethodSpec& spec, double rho_sq, const SymmetricMatrix& P, int K) {
  if (!(rho_sq > 0.0)) throw std::invalid_argument("collapse check requires rho > 0");
  if (K < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (std::pow(rho_sq, -K) > 1e12) throw std::invalid_argument("horizon overflows the geometric weights");

  const SupplyComponents parts = supply_components(spec, rho_sq);
  const SymmetricMatrix X_rho = rho_sq * parts.decrease + (1.0 - rho_sq) * parts.gap;
  const Realization real = realize(spec);
  const SymmetricMatrix lti = assemble_lti(real, P, rho_sq, X_rho).lhs;

  double max_dev = 0.0;
  double weight = 1.0;
  for (int j = 0; j < K; ++j) {
    const double weight_next = weight / rho_sq;
    const SymmetricMatrix X_j = weight * parts.decrease + (weight_next - weight) * parts.gap;
    const SymmetricMatrix ltv =
        assemble_ltv(real, weight * P, weight_next * P, X_j, j).lhs;
    const SymmetricMatrix expected = weight_next * lti;
    const double denom = weight_next * std::max({1.0, P.max_abs(), X_rho.max_abs(), lti.max_abs()});
    for (int a = 0; a < ltv.dim(); ++a) {
      for (int b = 0; b < ltv.dim(); ++b) {
        max_dev = std::max(max_dev, std::fabs(ltv(a, b) - expected(a, b)) / denom);
      }
    }
    weight = weight_next;
  }
  return max_dev;
}

}  // namespace ratecert
