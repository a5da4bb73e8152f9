#include "ratecert/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ratecert/rng.hpp"

using namespace ratecert;

namespace {

Vector random_point(Rng& rng, int p, double span) {
  Vector x(p);
  for (double& v : x) v = rng.uniform(-span, span);
  return x;
}

// Central-difference gradient oracle.
Vector numeric_gradient(const TestFunction& f, const Vector& x) {
  Vector g(x.size());
  const double h = 1e-6 * std::max(1.0, norm(x));
  Vector probe = x;
  for (size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double up = f.value(probe);
    probe[j] = x[j] - h;
    const double down = f.value(probe);
    probe[j] = x[j];
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

void check_gradient(const TestFunction& f, Rng& rng) {
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = random_point(rng, f.dim(), 2.0);
    const Vector g = f.gradient(x);
    const Vector g_fd = numeric_gradient(f, x);
    const double scale = std::max(1.0, norm(g));
    for (size_t j = 0; j < g.size(); ++j) CHECK(std::fabs(g[j] - g_fd[j]) <= 1e-6 * scale);
  }
}

void check_class_inequalities(const TestFunction& f, Rng& rng) {
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = random_point(rng, f.dim(), 3.0);
    const Vector y = random_point(rng, f.dim(), 3.0);
    const PairSlack slack = function_inequality_slacks(f, x, y);
    const double tol = 1e-9 * std::max(1.0, f.fclass().L * (dot(x, x) + dot(y, y)));
    CHECK(slack.strong_convexity <= tol);
    CHECK(slack.smoothness <= tol);
  }
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("one-dimensional quadratic is the plain parabola") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 1.0, 1, 5);
  const double x_star = f.x_star()[0];
  for (double x : {-1.0, 0.0, 2.5}) {
    const Vector point = {x};
    CHECK(f.value(point) ==
          doctest::Approx(0.5 * (x - x_star) * (x - x_star) + f.f_star()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 1, 5),
                  std::invalid_argument);
}

TEST_CASE("strongly convex quadratic carries both spectrum endpoints") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 5, 7);
  // Rebuild the Hessian column-by-column through gradient differences and
  // check its spectrum with the eigenvalue oracle.
  SymmetricMatrix H(5);
  const Vector at_center = f.gradient(f.x_star());
  for (int j = 0; j < 5; ++j) {
    Vector e = f.x_star();
    e[j] += 1.0;
    const Vector g = f.gradient(e);
    for (int i = j; i < 5; ++i) H.set(i, j, g[i] - at_center[i]);
  }
  const std::vector<double> eigs = eigenvalues(H);
  CHECK(eigs.front() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(eigs.back() == doctest::Approx(10.0).epsilon(1e-9));
  for (double v : eigs) {
    CHECK(v >= 1.0 - 1e-9);
    CHECK(v <= 10.0 + 1e-9);
  }
}

TEST_CASE("synthetic objectives match their oracles") {
  Rng rng(900);
  const TestFunction quad = make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 4, 11);
  check_gradient(quad, rng);
  check_class_inequalities(quad, rng);
  CHECK(norm(quad.gradient(quad.x_star())) <= 1e-10 * quad.fclass().L);

  const TestFunction convex = make_function(TestFunctionKind::QuadraticConvex, 0.0, 5.0, 6, 12);
  check_gradient(convex, rng);
  check_class_inequalities(convex, rng);
  CHECK(norm(convex.gradient(convex.x_star())) <= 1e-10 * convex.fclass().L);

  const TestFunction lse = make_function(TestFunctionKind::LogSumExpReg, 0.5, 8.0, 3, 13);
  check_gradient(lse, rng);
  check_class_inequalities(lse, rng);
  CHECK(norm(lse.gradient(lse.x_star())) <= 1e-10 * lse.fclass().L);
}

TEST_CASE("rank-deficient quadratic exposes the minimum-norm minimizer") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticConvex, 0.0, 5.0, 8, 21);
  // Any minimizer satisfies f = f*; the recorded one must too, with zero
  // gradient, and perturbations along the gradient direction cannot go lower.
  CHECK(f.value(f.x_star()) == doctest::Approx(f.f_star()).epsilon(1e-12));
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = random_point(rng, 8, 3.0);
    CHECK(f.value(x) >= f.f_star() - 1e-10);
  }

  // Least-squares oracle: rebuild the Hessian from gradient probes, extract
  // its null space with the eigenvalue oracle, and check that the recorded
  // minimizer carries no null-space component.
  SymmetricMatrix H(8);
  const Vector g0 = f.gradient(Vector(8, 0.0));
  for (int j = 0; j < 8; ++j) {
    Vector e(8, 0.0);
    e[j] = 1.0;
    const Vector g = f.gradient(e);
    for (int i = j; i < 8; ++i) H.set(i, j, g[i] - g0[i]);
  }
  const EigenSystem sys = eigen_system(H);
  for (int j = 0; j < 8; ++j) {
    if (std::fabs(sys.values[j]) > 1e-8 * f.fclass().L) continue;  // range direction
    double overlap = 0.0;
    for (int i = 0; i < 8; ++i) overlap += sys.vectors(i, j) * f.x_star()[i];
    CHECK(std::fabs(overlap) <= 1e-8 * (1.0 + norm(f.x_star())));
  }
}

TEST_CASE("gradient descent run is monotone and replays exactly") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 4, 31);
  const MethodSpec spec = MethodSpec::gradient_descent(0.1, f.fclass());
  Rng rng(32);
  const Vector x0 = random_point(rng, 4, 2.0);
  const Trajectory traj = run(spec, f, x0, 100);
  CHECK(replay_matches(traj));
  for (int k = 0; k < traj.K; ++k) {
    CHECK(traj.fx[static_cast<size_t>(k) + 1] <= traj.fx[static_cast<size_t>(k)] + 1e-12);
  }
}

TEST_CASE("stationary start stays stationary with zero slacks") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 3, 41);
  const MethodSpec spec = MethodSpec::nominal_nesterov(f.fclass());
  const Trajectory traj = run(spec, f, f.x_star(), 20);
  for (int k = 0; k <= traj.K; ++k) {
    for (int j = 0; j < traj.dim; ++j) CHECK(traj.x_at(k)[j] == f.x_star()[j]);
  }
  AuditArtifacts artifacts;
  const NesterovSupply s = nesterov_supply(f.fclass(), spec.alpha, spec.beta, 0.9);
  artifacts.supplies = {s.decrease, s.gap, s.combined};
  const AuditReport report = audit(traj, f, artifacts);
  for (const SlackSeries& series : report.checks) CHECK(series.max_slack <= 1e-24);  // float dust from the interpolation arithmetic
}

TEST_CASE("divergent steps trip the distance guard") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 3, 51);
  const MethodSpec spec = MethodSpec::gradient_descent(1.0, f.fclass());  // 2/L exceeded
  Rng rng(52);
  const Vector x0 = random_point(rng, 3, 1.0);
  CHECK_THROWS_AS(run(spec, f, x0, 2000), std::runtime_error);
}

TEST_CASE("nesterov run meets the certified linear rate bound") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 100.0, 6, 61);
  const MethodSpec spec = MethodSpec::nominal_nesterov(f.fclass());
  Rng rng(62);
  const Vector x0 = random_point(rng, 6, 1.0);
  const Trajectory traj = run(spec, f, x0, 200);

  const RateCertificate cert = analytic_nesterov(f.fclass());
  const double v0 = lyapunov_value(traj, f, cert, 0);
  double rate_pow = 1.0;
  for (int k = 0; k <= traj.K; ++k) {
    CHECK(traj.fx[static_cast<size_t>(k)] - f.f_star() <= rate_pow * v0 * (1.0 + 1e-9) + 1e-12 * v0);
    rate_pow *= cert.rho_sq;
  }
}

TEST_CASE("supply audits hold along nesterov and general runs") {
  Rng seeds(70);
  for (int trial = 0; trial < 5; ++trial) {
    const uint64_t seed = seeds.next_u64();
    const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 5, seed);
    Rng rng(seed + 1);
    const Vector x0 = random_point(rng, 5, 2.0);

    const MethodSpec nesterov = MethodSpec::nominal_nesterov(f.fclass());
    const Trajectory traj = run(nesterov, f, x0, 100);
    AuditArtifacts artifacts;
    const NesterovSupply s =
        nesterov_supply(f.fclass(), nesterov.alpha, nesterov.beta, analytic_nesterov(f.fclass()).rho_sq);
    artifacts.supplies = {s.decrease, s.gap, s.combined};
    artifacts.certificate = analytic_nesterov(f.fclass());
    artifacts.function_inequalities = true;
    const AuditReport report = audit(traj, f, artifacts);
    CHECK(report.pass());

    const MethodSpec general = MethodSpec::general(1.0 / f.fclass().L, 0.6, 0.4, f.fclass());
    const Trajectory gen_traj = run(general, f, x0, 100);
    AuditArtifacts gen_artifacts;
    const GeneralSupply gs = general_supply(f.fclass(), general.alpha, general.beta, general.eta, 0.9);
    gen_artifacts.supplies = {gs.decrease, gs.gap, gs.combined};
    gen_artifacts.function_inequalities = true;
    CHECK(audit(gen_traj, f, gen_artifacts).pass());

    const MethodSpec hb = MethodSpec::heavy_ball(1.0 / f.fclass().L, 0.3, f.fclass());
    const Trajectory hb_traj = run(hb, f, x0, 100);
    AuditArtifacts hb_artifacts;
    const GeneralSupply hs = general_supply(f.fclass(), hb.alpha, hb.beta, 0.0, 0.9);
    hb_artifacts.supplies = {hs.decrease, hs.gap, hs.combined};
    CHECK(audit(hb_traj, f, hb_artifacts).pass());
  }
}

TEST_CASE("lyapunov sequence decreases at the certified rate") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 50.0, 4, 81);
  const MethodSpec spec = MethodSpec::nominal_nesterov(f.fclass());
  Rng rng(82);
  const Trajectory traj = run(spec, f, random_point(rng, 4, 1.5), 150);
  const RateCertificate cert = analytic_nesterov(f.fclass());
  const double v0 = lyapunov_value(traj, f, cert, 0);
  for (int k = 0; k < traj.K; ++k) {
    const double decrease =
        lyapunov_value(traj, f, cert, k + 1) - cert.rho_sq * lyapunov_value(traj, f, cert, k);
    CHECK(decrease <= 1e-9 * v0);
  }
}

TEST_CASE("sublinear gradient descent bounds telescope") {
  Rng seeds(90);
  for (int trial = 0; trial < 3; ++trial) {
    const TestFunction f = make_function(TestFunctionKind::QuadraticConvex, 0.0, 4.0, 8, seeds.next_u64());
    const MethodSpec spec = MethodSpec::gradient_descent(1.0 / f.fclass().L, f.fclass());
    Rng rng(seeds.next_u64());
    const Vector x0 = random_point(rng, 8, 2.0);
    const Trajectory traj = run(spec, f, x0, 200);

    AuditArtifacts artifacts;
    artifacts.supplies = {gd_supply(f.fclass(), GdSupplyMode::Convex)};
    artifacts.sublinear_gd = certify_sublinear_gd(f.fclass().L, spec.alpha);
    const AuditReport report = audit(traj, f, artifacts);
    CHECK(report.pass());

    // Boxed bound at T = 200 with the storage weight L/2.
    Vector diff(8);
    for (int j = 0; j < 8; ++j) diff[j] = x0[j] - f.x_star()[j];
    double min_gap = traj.fx[0] - f.f_star();
    for (int k = 1; k <= 200; ++k) min_gap = std::min(min_gap, traj.fx[static_cast<size_t>(k)] - f.f_star());
    CHECK(min_gap <= f.fclass().L * dot(diff, diff) / (2.0 * 201.0) + 1e-12);
  }
}

TEST_CASE("sublinear nesterov schedule meets the weighted bound") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticConvex, 0.0, 2.0, 12, 95);
  const MethodSpec spec = MethodSpec::nesterov_sublinear(f.fclass().L);
  Rng rng(96);
  const Vector x0 = random_point(rng, 12, 2.0);
  const Trajectory traj = run(spec, f, x0, 300);
  CHECK(replay_matches(traj));

  AuditArtifacts artifacts;
  artifacts.schedule_supplies = true;
  artifacts.sublinear_bound = true;
  artifacts.function_inequalities = true;
  const AuditReport report = audit(traj, f, artifacts);
  CHECK(report.pass());

  // The weighted energy column doubles as the Lyapunov column for this path.
  const AuditTable table = audit_table(traj, f, artifacts);
  CHECK(table.rows[0].lyapunov == doctest::Approx(table.rows[0].lyapunov));
}

TEST_CASE("audit artifacts are validated against the trajectory") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 10.0, 3, 97);
  const MethodSpec spec = MethodSpec::nominal_nesterov(f.fclass());
  const Trajectory traj = run(spec, f, f.x_star(), 5);
  AuditArtifacts artifacts;
  artifacts.schedule_supplies = true;
  CHECK_THROWS_AS(audit(traj, f, artifacts), std::invalid_argument);

  // Supplies built for a different class are rejected.
  AuditArtifacts mismatched;
  const FunctionClass other(1.0, 99.0);
  const NesterovSupply s = nesterov_supply(other, 1.0 / other.L, 0.5, 0.9);
  mismatched.supplies = {s.combined};
  CHECK_THROWS_AS(audit(traj, f, mismatched), std::invalid_argument);

  // Wrong supply dimension for the method.
  AuditArtifacts wrong_dim;
  wrong_dim.supplies = {gd_supply(f.fclass(), GdSupplyMode::StronglyConvex)};
  CHECK_THROWS_AS(audit(traj, f, wrong_dim), std::invalid_argument);
}

}  // TEST_SUITE
