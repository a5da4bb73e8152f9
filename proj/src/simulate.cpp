#include "ratecert/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ratecert/rng.hpp"

namespace ratecert {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::string kind_name(TestFunctionKind kind) {
  switch (kind) {
    case TestFunctionKind::QuadraticSC: return "quadratic-sc";
    case TestFunctionKind::QuadraticConvex: return "quadratic-convex";
    case TestFunctionKind::LogSumExpReg: return "logsumexp";
  }
  return "unknown";
}

double TestFunction::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
  if (kind_ != TestFunctionKind::LogSumExpReg) {
    // (1/2) sum_i spectrum_i <basis row i, x - center>^2 + offset
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) {
      double t = 0.0;
      for (int j = 0; j < dim_; ++j) t += basis_[static_cast<size_t>(i) * dim_ + j] * (x[j] - center_[j]);
      acc += spectrum_[i] * t * t;
    }
    return 0.5 * acc + offset_;
  }
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(n_terms_);
  for (int i = 0; i < n_terms_; ++i) {
    double t = terms_b_[i];
    for (int j = 0; j < dim_; ++j) t += terms_a_[static_cast<size_t>(i) * dim_ + j] * x[j];
    terms[i] = t / tau_;
    max_term = std::max(max_term, terms[i]);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  const double ridge = 0.5 * fclass_.m * dot(x, x);
  return tau_ * (max_term + std::log(sum)) + ridge;
}

Vector TestFunction::gradient(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
  Vector g(dim_, 0.0);
  if (kind_ != TestFunctionKind::LogSumExpReg) {
    for (int i = 0; i < dim_; ++i) {
      double t = 0.0;
      for (int j = 0; j < dim_; ++j) t += basis_[static_cast<size_t>(i) * dim_ + j] * (x[j] - center_[j]);
      t *= spectrum_[i];
      for (int j = 0; j < dim_; ++j) g[j] += basis_[static_cast<size_t>(i) * dim_ + j] * t;
    }
    return g;
  }
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(n_terms_);
  for (int i = 0; i < n_terms_; ++i) {
    double t = terms_b_[i];
    for (int j = 0; j < dim_; ++j) t += terms_a_[static_cast<size_t>(i) * dim_ + j] * x[j];
    terms[i] = t / tau_;
    max_term = std::max(max_term, terms[i]);
  }
  double sum = 0.0;
  for (double& t : terms) {
    t = std::exp(t - max_term);
    sum += t;
  }
  for (int i = 0; i < n_terms_; ++i) {
    const double weight = terms[i] / sum;
    for (int j = 0; j < dim_; ++j) g[j] += weight * terms_a_[static_cast<size_t>(i) * dim_ + j];
  }
  for (int j = 0; j < dim_; ++j) g[j] += fclass_.m * x[j];
  return g;
}

namespace {

// Random orthogonal basis via Gram-Schmidt on a Gaussian draw.
Vector random_orthogonal(Rng& rng, int p) {
  Vector basis(static_cast<size_t>(p) * p);
  for (int i = 0; i < p; ++i) {
    Vector row(p);
    while (true) {
      for (int j = 0; j < p; ++j) row[j] = rng.normal();
      for (int r = 0; r < i; ++r) {
        double proj = 0.0;
        for (int j = 0; j < p; ++j) proj += basis[static_cast<size_t>(r) * p + j] * row[j];
        for (int j = 0; j < p; ++j) row[j] -= proj * basis[static_cast<size_t>(r) * p + j];
      }
      const double len = norm(row);
      if (len > 1e-6) {
        for (int j = 0; j < p; ++j) basis[static_cast<size_t>(i) * p + j] = row[j] / len;
        break;
      }
    }
  }
  return basis;
}

double largest_gram_eigenvalue(const Vector& a, int n, int p, Rng& rng) {
  // Power iteration on A'A; a deterministic seeded start suffices at the
  // accuracy needed for a conservative smoothness bound.
  Vector v(p);
  for (int j = 0; j < p; ++j) v[j] = rng.normal();
  double lambda = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    Vector av(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j) av[i] += a[static_cast<size_t>(i) * p + j] * v[j];
    Vector atav(p, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j) atav[j] += a[static_cast<size_t>(i) * p + j] * av[i];
    const double len = norm(atav);
    if (len == 0.0) return 0.0;
    lambda = len / std::max(norm(v), 1e-300);
    for (int j = 0; j < p; ++j) v[j] = atav[j] / len;
  }
  return lambda;
}

}  // namespace

TestFunction make_function(TestFunctionKind kind, double m, double L, int p, uint64_t seed) {
  FunctionClass fclass(m, L);
  if (p < 1) throw std::invalid_argument("dimension must be positive");
  Rng rng(seed);

  TestFunction f;
  f.kind_ = kind;
  f.dim_ = p;
  f.fclass_ = fclass;

  switch (kind) {
    case TestFunctionKind::QuadraticSC: {
      if (!(m > 0.0)) throw std::invalid_argument("strongly convex quadratic requires m > 0");
      if (p == 1 && m != L) {
        throw std::invalid_argument("a 1-d quadratic cannot carry both endpoints unless m == L");
      }
      f.spectrum_.assign(p, 0.0);
      f.spectrum_[0] = m;
      if (p > 1) f.spectrum_[p - 1] = L;
      for (int i = 1; i + 1 < p; ++i) f.spectrum_[i] = rng.uniform(m, L);
      f.basis_ = random_orthogonal(rng, p);
      f.center_.resize(p);
      for (double& c : f.center_) c = rng.uniform(-2.0, 2.0);
      f.offset_ = rng.uniform(-1.0, 1.0);
      f.x_star_ = f.center_;
      f.f_star_ = f.offset_;
      break;
    }
    case TestFunctionKind::QuadraticConvex: {
      if (m != 0.0) throw std::invalid_argument("convex quadratic is built with m = 0");
      if (p < 2) throw std::invalid_argument("rank-deficient quadratic needs p >= 2");
      const int null_count = std::max(1, p / 4);
      f.spectrum_.assign(p, 0.0);
      f.spectrum_[p - 1] = L;
      for (int i = null_count; i + 1 < p; ++i) f.spectrum_[i] = rng.uniform(0.05 * L, L);
      f.basis_ = random_orthogonal(rng, p);
      f.center_.resize(p);
      for (double& c : f.center_) c = rng.uniform(-2.0, 2.0);
      f.offset_ = rng.uniform(-1.0, 1.0);
      // Minimum-norm minimizer: remove the null-space component of the center.
      f.x_star_ = f.center_;
      for (int i = 0; i < null_count; ++i) {
        double proj = 0.0;
        for (int j = 0; j < p; ++j) proj += f.basis_[static_cast<size_t>(i) * p + j] * f.center_[j];
        for (int j = 0; j < p; ++j) f.x_star_[j] -= proj * f.basis_[static_cast<size_t>(i) * p + j];
      }
      f.f_star_ = f.offset_;
      break;
    }
    case TestFunctionKind::LogSumExpReg: {
      if (!(m > 0.0)) throw std::invalid_argument("the smoothed-max objective requires a ridge m > 0");
      if (!(L > m)) throw std::invalid_argument("smoothed max needs L > m to carry its curvature");
      f.tau_ = 1.0;
      f.n_terms_ = 2 * p + 1;
      f.terms_a_.resize(static_cast<size_t>(f.n_terms_) * p);
      f.terms_b_.resize(f.n_terms_);
      for (double& v : f.terms_a_) v = rng.normal();
      for (double& v : f.terms_b_) v = rng.uniform(-1.0, 1.0);
      // Scale the slopes so the conservative curvature bound lands on L.
      Rng power_rng = rng.fork(1);
      const double lam = largest_gram_eigenvalue(f.terms_a_, f.n_terms_, p, power_rng);
      const double target = f.tau_ * (L - m);
      const double scale = lam > 0.0 ? std::sqrt(target / lam) : 1.0;
      for (double& v : f.terms_a_) v *= scale;

      // Descent oracle for the minimum: fixed step 1/L to a tight
      // gradient-norm threshold.
      Vector x(p, 0.0);
      Vector g = f.gradient(x);
      long iter = 0;
      while (norm(g) > 1e-12 && iter < 2'000'000) {
        for (int j = 0; j < p; ++j) x[j] -= g[j] / L;
        g = f.gradient(x);
        ++iter;
      }
      if (norm(g) > 1e-12) throw std::runtime_error("minimum oracle did not converge");
      f.x_star_ = x;
      f.f_star_ = f.value(x);
      break;
    }
  }
  return f;
}

PairSlack function_inequality_slacks(const TestFunction& f, std::span<const double> x,
                                     std::span<const double> y) {
  const Vector gy = f.gradient(y);
  Vector diff(x.size());
  for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  const double cross = dot(gy, diff);
  const double dist_sq = dot(diff, diff);
  const double fx = f.value(x);
  const double fy = f.value(y);
  PairSlack slack;
  slack.strong_convexity = cross + 0.5 * f.fclass().m * dist_sq - (fx - fy);
  slack.smoothness = -cross - 0.5 * f.fclass().L * dist_sq - (fy - fx);
  return slack;
}

Trajectory run(const MethodSpec& spec, const TestFunction& f, const Vector& x0, int K) {
  if (K < 1) throw std::invalid_argument("horizon must be at least 1");
  if (static_cast<int>(x0.size()) != f.dim()) throw std::invalid_argument("start dimension mismatch");

  Trajectory traj;
  traj.spec = spec;
  traj.K = K;
  traj.dim = f.dim();
  if (spec.family == MethodFamily::NesterovSublinear) traj.sched.emplace(K);

  traj.x.reserve(static_cast<size_t>(K) + 2);
  traj.x.push_back(x0);  // x_{-1} = x_0
  traj.x.push_back(x0);
  traj.fx.push_back(f.value(x0));

  Vector start_diff(x0.size());
  for (size_t i = 0; i < x0.size(); ++i) start_diff[i] = x0[i] - f.x_star()[i];
  const double guard = 1e8 * std::max(norm(start_diff), 1e-300);

  const int p = f.dim();
  for (int k = 0; k <= K; ++k) {
    const Vector& xk = traj.x_at(k);
    const Vector& xprev = traj.x_at(k - 1);

    double beta = spec.beta;
    double eta = spec.eta;
    double alpha = spec.alpha;
    if (spec.family == MethodFamily::NesterovSublinear) {
      beta = traj.sched->beta(k);
      eta = beta;
      alpha = 1.0 / f.fclass().L;
    } else if (spec.family == MethodFamily::GradientDescent) {
      beta = 0.0;
      eta = 0.0;
    }

    Vector y(p);
    for (int j = 0; j < p; ++j) y[j] = (1.0 + eta) * xk[j] - eta * xprev[j];
    traj.y.push_back(y);
    traj.w.push_back(f.gradient(y));

    if (k == K) break;
    const Vector& w = traj.w.back();
    Vector next(p);
    const bool interpolated_step = spec.family == MethodFamily::Nesterov ||
                                   spec.family == MethodFamily::NesterovSublinear ||
                                   spec.family == MethodFamily::GradientDescent;
    if (interpolated_step) {
      for (int j = 0; j < p; ++j) next[j] = y[j] - alpha * w[j];
    } else {
      for (int j = 0; j < p; ++j) next[j] = (1.0 + beta) * xk[j] - beta * xprev[j] - alpha * w[j];
    }
    traj.x.push_back(std::move(next));
    traj.fx.push_back(f.value(traj.x.back()));

    Vector diff(p);
    for (int j = 0; j < p; ++j) diff[j] = traj.x.back()[j] - f.x_star()[j];
    if (norm(diff) > guard) throw std::runtime_error("trajectory diverged past the distance guard");
  }
  return traj;
}

bool replay_matches(const Trajectory& traj) {
  const int p = traj.dim;
  const MethodSpec& spec = traj.spec;
  for (int k = 0; k < traj.K; ++k) {
    const Vector& xk = traj.x_at(k);
    const Vector& xprev = traj.x_at(k - 1);
    const Vector& y = traj.y[static_cast<size_t>(k)];
    const Vector& w = traj.w[static_cast<size_t>(k)];
    double beta = spec.beta;
    double eta = spec.eta;
    double alpha = spec.alpha;
    if (spec.family == MethodFamily::NesterovSublinear) {
      beta = traj.sched->beta(k);
      eta = beta;
      alpha = 1.0 / spec.fclass.L;
    } else if (spec.family == MethodFamily::GradientDescent) {
      beta = 0.0;
      eta = 0.0;
    }
    const bool interpolated_step = spec.family == MethodFamily::Nesterov ||
                                   spec.family == MethodFamily::NesterovSublinear ||
                                   spec.family == MethodFamily::GradientDescent;
    for (int j = 0; j < p; ++j) {
      if (y[j] != (1.0 + eta) * xk[j] - eta * xprev[j]) return false;
      const double next = interpolated_step
                              ? y[j] - alpha * w[j]
                              : (1.0 + beta) * xk[j] - beta * xprev[j] - alpha * w[j];
      if (traj.x_at(k + 1)[j] != next) return false;
    }
  }
  return true;
}

namespace {

struct Blocks {
  std::vector<Vector> parts;
};

Blocks state_input_blocks(const Trajectory& traj, const TestFunction& f, int k, int block_count) {
  Blocks blocks;
  const int p = traj.dim;
  auto diff_to_star = [&](const Vector& v) {
    Vector d(p);
    for (int j = 0; j < p; ++j) d[j] = v[j] - f.x_star()[j];
    return d;
  };
  if (block_count == 2) {
    blocks.parts.push_back(diff_to_star(traj.x_at(k)));
  } else {
    blocks.parts.push_back(diff_to_star(traj.x_at(k)));
    blocks.parts.push_back(diff_to_star(traj.x_at(k - 1)));
  }
  blocks.parts.push_back(traj.w[static_cast<size_t>(k)]);
  return blocks;
}

double quadratic_form(const SymmetricMatrix& X, const Blocks& blocks) {
  double acc = 0.0;
  const int n = X.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (X(i, j) == 0.0) continue;
      acc += X(i, j) * dot(blocks.parts[static_cast<size_t>(i)], blocks.parts[static_cast<size_t>(j)]);
    }
  }
  return acc;
}

}  // namespace

double supply_value_at(const Trajectory& traj, const TestFunction& f, const SymmetricMatrix& X, int k) {
  if (k < 0 || k > traj.K) throw std::invalid_argument("step index out of range");
  return quadratic_form(X, state_input_blocks(traj, f, k, X.dim()));
}

double storage_value_at(const Trajectory& traj, const TestFunction& f, const SymmetricMatrix& P, int k) {
  const int p = traj.dim;
  auto diff = [&](const Vector& v) {
    Vector d(p);
    for (int j = 0; j < p; ++j) d[j] = v[j] - f.x_star()[j];
    return d;
  };
  Blocks blocks;
  blocks.parts.push_back(diff(traj.x_at(k)));
  if (P.dim() == 2) blocks.parts.push_back(diff(traj.x_at(k - 1)));
  return quadratic_form(P, blocks);
}

double lyapunov_value(const Trajectory& traj, const TestFunction& f, const RateCertificate& cert,
                      int k) {
  const double gap = traj.fx[static_cast<size_t>(k)] - f.f_star();
  return storage_value_at(traj, f, cert.P, k) + cert.f_term_weight * gap;
}

AuditTable audit_table(const Trajectory& traj, const TestFunction& f, const AuditArtifacts& artifacts) {
  if (artifacts.schedule_supplies && !traj.sched.has_value()) {
    throw std::invalid_argument("schedule audit needs a schedule-driven trajectory");
  }
  if ((artifacts.sublinear_bound || artifacts.schedule_supplies) &&
      traj.spec.family != MethodFamily::NesterovSublinear) {
    throw std::invalid_argument("weighted bound audits expect the schedule-driven method");
  }
  if (traj.spec.fclass.m != f.fclass().m || traj.spec.fclass.L != f.fclass().L) {
    throw std::invalid_argument("trajectory and objective class constants disagree");
  }
  for (const SupplyRate& s : artifacts.supplies) {
    const int expected = traj.spec.state_dim() + 1;
    if (s.X.dim() != expected) throw std::invalid_argument("supply dimension does not fit the method");
    if (s.params.L > 0.0 && s.params.L != f.fclass().L) {
      throw std::invalid_argument("supply was built for a different objective class");
    }
  }
  const int K = traj.K;
  const double L = f.fclass().L;

  AuditTable table;
  for (const SupplyRate& s : artifacts.supplies) {
    table.slack_names.push_back("supply_" + guarantee_name(s.guarantee.form));
  }
  int sched_first = -1;
  if (artifacts.schedule_supplies) {
    sched_first = static_cast<int>(table.slack_names.size());
    table.slack_names.push_back("supply_step_decrease_k");
    table.slack_names.push_back("supply_next_gap_k");
    table.slack_names.push_back("supply_weighted_k");
  }
  int lyap_idx = -1;
  if (artifacts.certificate.has_value()) {
    lyap_idx = static_cast<int>(table.slack_names.size());
    table.slack_names.push_back("lyapunov_decrease");
  }
  int gd_idx = -1;
  if (artifacts.sublinear_gd.has_value()) {
    gd_idx = static_cast<int>(table.slack_names.size());
    table.slack_names.push_back("cumulative_gap");
    table.slack_names.push_back("min_gap_bound");
    table.slack_names.push_back("monotone_decrease");
  }
  int sub_idx = -1;
  if (artifacts.sublinear_bound) {
    sub_idx = static_cast<int>(table.slack_names.size());
    table.slack_names.push_back("weighted_value_bound");
    table.slack_names.push_back("weighted_energy_decrease");
  }
  int pair_idx = -1;
  if (artifacts.function_inequalities) {
    pair_idx = static_cast<int>(table.slack_names.size());
    table.slack_names.push_back("strong_convexity_pair");
    table.slack_names.push_back("smoothness_pair");
  }

  // Schedule-weighted storage for the sublinear path.
  SublinearCertificate sub_cert;
  if (artifacts.sublinear_bound || artifacts.schedule_supplies) {
    sub_cert.L = L;
    sub_cert.K = K;
    sub_cert.sched = *traj.sched;
  }
  double v0 = 0.0;
  double mu0_gap0 = 0.0;
  if (artifacts.sublinear_bound) {
    v0 = storage_value_at(traj, f, sub_cert.storage_at(0), 0);
    mu0_gap0 = traj.sched->mu(0) * (traj.fx[0] - f.f_star());
  }

  double running_sum = 0.0;
  double running_min_gap = std::numeric_limits<double>::infinity();

  for (int k = 0; k <= K; ++k) {
    AuditTable::Row row;
    row.k = k;
    row.f_gap = traj.fx[static_cast<size_t>(k)] - f.f_star();
    row.grad_norm = norm(traj.w[static_cast<size_t>(k)]);
    row.lyapunov = kNaN;
    row.slacks.assign(table.slack_names.size(), kNaN);

    const double gap_k = row.f_gap;
    const double gap_next = k < K ? traj.fx[static_cast<size_t>(k) + 1] - f.f_star() : kNaN;

    for (size_t si = 0; si < artifacts.supplies.size(); ++si) {
      if (k >= K) continue;
      const SupplyRate& s = artifacts.supplies[si];
      const double value = supply_value_at(traj, f, s.X, k);
      row.slacks[si] = value - s.guarantee.rhs(gap_k, gap_next);
    }

    if (sched_first >= 0 && k < K) {
      const SublinearSupply s = sublinear_supply(L, *traj.sched, k);
      row.slacks[static_cast<size_t>(sched_first)] =
          supply_value_at(traj, f, s.decrease.X, k) - s.decrease.guarantee.rhs(gap_k, gap_next);
      row.slacks[static_cast<size_t>(sched_first) + 1] =
          supply_value_at(traj, f, s.gap.X, k) - s.gap.guarantee.rhs(gap_k, gap_next);
      row.slacks[static_cast<size_t>(sched_first) + 2] =
          supply_value_at(traj, f, s.combined.X, k) - s.combined.guarantee.rhs(gap_k, gap_next);
    }

    if (lyap_idx >= 0) {
      row.lyapunov = lyapunov_value(traj, f, *artifacts.certificate, k);
      if (k < K) {
        const double next = lyapunov_value(traj, f, *artifacts.certificate, k + 1);
        row.slacks[static_cast<size_t>(lyap_idx)] = next - artifacts.certificate->rho_sq * row.lyapunov;
      }
    }

    if (gd_idx >= 0) {
      running_sum += gap_k;
      running_min_gap = std::min(running_min_gap, gap_k);
      const double v_start = artifacts.sublinear_gd->storage_weight *
                             storage_value_at(traj, f, SymmetricMatrix::identity(1), 0);
      row.slacks[static_cast<size_t>(gd_idx)] = running_sum - v_start;
      row.slacks[static_cast<size_t>(gd_idx) + 1] = running_min_gap - v_start / (k + 1);
      if (k < K) row.slacks[static_cast<size_t>(gd_idx) + 2] = gap_next - gap_k;
    }

    if (sub_idx >= 0) {
      if (k >= 1) {
        row.slacks[static_cast<size_t>(sub_idx)] =
            gap_k - (mu0_gap0 + v0) / traj.sched->mu(k);
      }
      if (k < K) {
        const double energy_k =
            traj.sched->mu(k) * gap_k + storage_value_at(traj, f, sub_cert.storage_at(k), k);
        const double energy_next = traj.sched->mu(k + 1) * gap_next +
                                   storage_value_at(traj, f, sub_cert.storage_at(k + 1), k + 1);
        row.slacks[static_cast<size_t>(sub_idx) + 1] = energy_next - energy_k;
      }
      if (row.lyapunov != row.lyapunov) {
        row.lyapunov = traj.sched->mu(k) * gap_k + storage_value_at(traj, f, sub_cert.storage_at(k), k);
      }
    }

    if (pair_idx >= 0) {
      const PairSlack pair =
          function_inequality_slacks(f, traj.x_at(k), traj.y[static_cast<size_t>(k)]);
      row.slacks[static_cast<size_t>(pair_idx)] = pair.strong_convexity;
      row.slacks[static_cast<size_t>(pair_idx) + 1] = pair.smoothness;
    }

    table.rows.push_back(std::move(row));
  }
  return table;
}

double AuditReport::max_slack() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const SlackSeries& s : checks) worst = std::max(worst, s.max_slack);
  return worst;
}

bool AuditReport::pass() const {
  for (const SlackSeries& s : checks) {
    if (s.max_slack > tol) return false;
  }
  return true;
}

AuditReport audit(const Trajectory& traj, const TestFunction& f, const AuditArtifacts& artifacts) {
  const AuditTable table = audit_table(traj, f, artifacts);

  Vector start_diff(traj.dim);
  for (int j = 0; j < traj.dim; ++j) start_diff[j] = traj.x_at(0)[j] - f.x_star()[j];
  AuditReport report;
  report.scale = f.fclass().L * dot(start_diff, start_diff);
  report.tol = artifacts.tol >= 0.0 ? artifacts.tol : 1e-8 * report.scale;

  for (size_t si = 0; si < table.slack_names.size(); ++si) {
    SlackSeries series;
    series.name = table.slack_names[si];
    series.max_slack = -std::numeric_limits<double>::infinity();
    for (const AuditTable::Row& row : table.rows) {
      const double v = row.slacks[si];
      if (v != v) continue;  // undefined at this step
      if (v > series.max_slack) {
        series.max_slack = v;
        series.argmax_k = row.k;
      }
    }
    report.checks.push_back(series);
  }
  return report;
}

}  // namespace ratecert
