#include "ratecert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ratecert/rng.hpp"

namespace ratecert {

std::string status_name(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::Feasible: return "Feasible";
    case FeasibilityStatus::Infeasible: return "Infeasible";
    case FeasibilityStatus::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

double merit_of(const std::vector<ConstraintBlock>& blocks) {
  double merit = -std::numeric_limits<double>::infinity();
  for (const ConstraintBlock& block : blocks) {
    const std::vector<double> eigs = eigenvalues(block.matrix);
    const double violation = block.sense == BlockSense::NSD ? eigs.back() : -eigs.front();
    merit = std::max(merit, violation);
  }
  return merit;
}

namespace {

void probe_affine(const FeasibilityProblem& problem, Rng& rng) {
  const int n = problem.var_count;
  std::vector<double> a(n), b(n), mid(n);
  for (int trial = 0; trial < 2; ++trial) {
    for (int i = 0; i < n; ++i) {
      a[i] = rng.uniform(-problem.scale, problem.scale);
      b[i] = rng.uniform(-problem.scale, problem.scale);
      mid[i] = 0.5 * (a[i] + b[i]);
    }
    const auto blocks_a = problem.assemble(a);
    const auto blocks_b = problem.assemble(b);
    const auto blocks_mid = problem.assemble(mid);
    if (blocks_a.size() != blocks_b.size() || blocks_a.size() != blocks_mid.size()) {
      throw std::invalid_argument("assembler returned inconsistent block counts");
    }
    for (size_t bi = 0; bi < blocks_a.size(); ++bi) {
      const SymmetricMatrix& ma = blocks_a[bi].matrix;
      const SymmetricMatrix& mb = blocks_b[bi].matrix;
      const SymmetricMatrix& mm = blocks_mid[bi].matrix;
      const double magnitude = std::max({1.0, ma.max_abs(), mb.max_abs()});
      for (int i = 0; i < ma.dim(); ++i) {
        for (int j = 0; j < ma.dim(); ++j) {
          const double gap = 0.5 * (ma(i, j) + mb(i, j)) - mm(i, j);
          if (std::fabs(gap) > 1e-9 * magnitude) {
            throw std::invalid_argument("assembler is not affine in the variables");
          }
        }
      }
    }
  }
}

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

// Standard Nelder-Mead on f, starting from x0 with the given edge length.
// Returns the best point found; deterministic for identical inputs.
void nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double>& x0,
                 double& f0, double edge, int max_iterations, long& budget) {
  const int n = static_cast<int>(x0.size());
  Simplex s;
  s.points.assign(n + 1, x0);
  // Unevaluated vertices must never look better than evaluated ones.
  s.values.assign(n + 1, std::numeric_limits<double>::infinity());
  for (int i = 1; i <= n; ++i) s.points[i][i - 1] += edge;
  for (int i = 0; i <= n && budget > 0; ++i, --budget) s.values[i] = f(s.points[i]);

  std::vector<int> order(n + 1);
  for (int iter = 0; iter < max_iterations && budget > 0; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s.values[a] < s.values[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];

    double diameter = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int d = 0; d < n; ++d) {
        diameter = std::max(diameter, std::fabs(s.points[order[i]][d] - s.points[best][d]));
      }
    }
    if (diameter < 1e-13 && std::fabs(s.values[worst] - s.values[best]) < 1e-15) break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < n; ++d) centroid[d] += s.points[i][d] / n;
    }

    auto interpolate = [&](double coeff) {
      std::vector<double> p(n);
      for (int d = 0; d < n; ++d) p[d] = centroid[d] + coeff * (centroid[d] - s.points[worst][d]);
      return p;
    };

    const std::vector<double> reflected = interpolate(1.0);
    const double fr = f(reflected);
    --budget;
    if (fr < s.values[best]) {
      const std::vector<double> expanded = interpolate(2.0);
      const double fe = f(expanded);
      --budget;
      if (fe < fr) {
        s.points[worst] = expanded;
        s.values[worst] = fe;
      } else {
        s.points[worst] = reflected;
        s.values[worst] = fr;
      }
      continue;
    }
    if (fr < s.values[second_worst]) {
      s.points[worst] = reflected;
      s.values[worst] = fr;
      continue;
    }
    const std::vector<double> contracted = interpolate(fr < s.values[worst] ? 0.5 : -0.5);
    const double fc = f(contracted);
    --budget;
    if (fc < std::min(fr, s.values[worst])) {
      s.points[worst] = contracted;
      s.values[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (int i = 0; i <= n && budget > 0; ++i) {
      if (i == best) continue;
      for (int d = 0; d < n; ++d) s.points[i][d] = s.points[best][d] + 0.5 * (s.points[i][d] - s.points[best][d]);
      s.values[i] = f(s.points[i]);
      --budget;
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (s.values[i] < s.values[best]) best = i;
  }
  x0 = s.points[best];
  f0 = s.values[best];
}

}  // namespace

FeasibilityResult solve(const FeasibilityProblem& problem, const SolveOptions& options) {
  if (problem.var_count < 1 || problem.var_count > 8) {
    throw std::invalid_argument("feasibility problems are limited to 1..8 variables");
  }
  if (!problem.assemble) throw std::invalid_argument("missing assembler");
  if (!(problem.scale > 0.0)) throw std::invalid_argument("scale must be positive");

  const double eps_feas = options.eps_feasible >= 0.0 ? options.eps_feasible : 1e-8 * problem.scale;
  const double eps_infeas = options.eps_infeasible >= 0.0 ? options.eps_infeasible : 1e-5 * problem.scale;
  if (eps_feas > eps_infeas) throw std::invalid_argument("eps_feasible must not exceed eps_infeasible");

  Rng rng(options.seed);
  probe_affine(problem, rng);

  const int n = problem.var_count;
  long evaluations = 0;
  // Objective works in scale-free variables.
  auto objective = [&](const std::vector<double>& scaled) {
    std::vector<double> physical(scaled.size());
    for (size_t i = 0; i < scaled.size(); ++i) physical[i] = scaled[i] * problem.scale;
    ++evaluations;
    return merit_of(problem.assemble(physical));
  };

  long budget = options.max_evaluations > 0
                    ? options.max_evaluations
                    : static_cast<long>(options.restarts) * options.max_iterations * (n + 2);

  std::vector<double> best_x(n, 0.0);
  double best_merit = objective(best_x);
  --budget;

  for (int restart = 0; restart < options.restarts && budget > 0; ++restart) {
    Rng sub = rng.fork(static_cast<uint64_t>(restart));
    std::vector<double> x(n);
    double edge;
    if (restart == 0) {
      // Structured start at the origin with a wide simplex.
      std::fill(x.begin(), x.end(), 0.0);
      edge = 1.0;
    } else {
      for (int i = 0; i < n; ++i) x[i] = sub.uniform(-2.0, 2.0);
      edge = sub.uniform(0.1, 1.0);
    }
    double fx = objective(x);
    --budget;
    nelder_mead(objective, x, fx, edge, options.max_iterations, budget);
    if (fx < best_merit) {
      best_merit = fx;
      best_x = x;
    }
    if (best_merit <= eps_feas) break;
  }

  // Polish the incumbent with a tight simplex.
  if (budget > 0) {
    std::vector<double> x = best_x;
    double fx = best_merit;
    nelder_mead(objective, x, fx, 1e-5, options.max_iterations, budget);
    if (fx < best_merit) {
      best_merit = fx;
      best_x = x;
    }
  }

  FeasibilityResult result;
  result.variables.resize(n);
  for (int i = 0; i < n; ++i) result.variables[i] = best_x[i] * problem.scale;
  result.merit = best_merit;
  result.evaluations = evaluations;
  if (best_merit <= eps_feas) {
    // Re-verify every block independently before reporting success.
    for (const ConstraintBlock& block : problem.assemble(result.variables)) {
      const DefinitenessSense sense =
          block.sense == BlockSense::NSD ? DefinitenessSense::NSD : DefinitenessSense::PSD;
      if (!definiteness(block.matrix, sense, eps_feas).holds) {
        throw std::logic_error("merit and definiteness re-verification disagree");
      }
    }
    result.status = FeasibilityStatus::Feasible;
  } else if (best_merit > eps_infeas) {
    result.status = FeasibilityStatus::Infeasible;
  } else {
    result.status = FeasibilityStatus::Inconclusive;
  }
  return result;
}

}  // namespace ratecert
