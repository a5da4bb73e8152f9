// Command-line frontend: certification, bisection, simulation and audit
// commands emitting line-delimited JSON reports and CSV trajectories.

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ratecert/certify.hpp"
#include "ratecert/continuous.hpp"
#include "ratecert/lmi.hpp"
#include "ratecert/report.hpp"
#include "ratecert/rng.hpp"
#include "ratecert/simulate.hpp"

namespace {

using namespace ratecert;

struct Emitter {
  bool pretty = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void operator()(ReportRecord record) const {
    record.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (pretty) {
      std::cout << record.to_pretty();
    } else {
      std::cout << record.to_json() << '\n';
    }
  }
};

MethodFamily parse_family(const std::string& name) {
  if (name == "gd") return MethodFamily::GradientDescent;
  if (name == "nesterov") return MethodFamily::Nesterov;
  if (name == "heavyball") return MethodFamily::HeavyBall;
  if (name == "general") return MethodFamily::GeneralAccelerated;
  if (name == "nesterov-sublinear") return MethodFamily::NesterovSublinear;
  throw CLI::ValidationError("family", "unknown method family: " + name);
}

struct MethodFlags {
  std::string family = "nesterov";
  double m = 1.0;
  double L = 10.0;
  double alpha = 0.0;  // 0 means 1/L
  double beta = -2.0;  // sentinel: nominal
  double eta = 0.0;
  bool beta_given = false;

  void attach(CLI::App* cmd, bool with_family = true) {
    if (with_family) {
      cmd->add_option("family", family, "method family (gd|nesterov|heavyball|general)")
          ->required();
    }
    cmd->add_option("--m", m, "strong-convexity modulus");
    cmd->add_option("--L", L, "smoothness constant")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", alpha, "step size (default 1/L)");
    cmd->add_option("--beta", beta, "momentum (default nominal)");
    cmd->add_option("--eta", eta, "interpolation momentum (general family)");
  }

  MethodSpec build() const {
    const FunctionClass fclass(m, L);
    const double a = alpha > 0.0 ? alpha : 1.0 / L;
    const MethodFamily fam = parse_family(family);
    if (fam == MethodFamily::GradientDescent) return MethodSpec::gradient_descent(a, fclass);
    if (fam == MethodFamily::NesterovSublinear) return MethodSpec::nesterov_sublinear(L);
    double b = beta;
    if (b <= -2.0) {
      const double rk = std::sqrt(fclass.kappa());
      b = (rk - 1.0) / (rk + 1.0);
    }
    switch (fam) {
      case MethodFamily::Nesterov: return MethodSpec::nesterov(a, b, fclass);
      case MethodFamily::HeavyBall: return MethodSpec::heavy_ball(a, b, fclass);
      default: return MethodSpec::general(a, b, eta, fclass);
    }
  }

  void echo(ReportRecord& record, const MethodSpec& spec) const {
    record.text_params.emplace_back("family", family_name(spec.family));
    record.params.emplace_back("m", spec.fclass.m);
    record.params.emplace_back("L", spec.fclass.L);
    record.params.emplace_back("alpha", spec.alpha);
    if (spec.state_dim() == 2) {
      record.params.emplace_back("beta", spec.beta);
      record.params.emplace_back("eta", spec.eta);
    }
  }
};

double default_rate(const MethodSpec& spec) {
  if (spec.family == MethodFamily::GradientDescent) {
    const double rho = 1.0 - spec.fclass.m / spec.fclass.L;
    return rho * rho;
  }
  return 1.0 - std::sqrt(spec.fclass.m / spec.fclass.L);
}

TestFunctionKind parse_kind(const std::string& name, double m) {
  if (name == "auto") {
    return m > 0.0 ? TestFunctionKind::QuadraticSC : TestFunctionKind::QuadraticConvex;
  }
  if (name == "quadratic") return TestFunctionKind::QuadraticSC;
  if (name == "quadratic-convex") return TestFunctionKind::QuadraticConvex;
  if (name == "logsumexp") return TestFunctionKind::LogSumExpReg;
  throw CLI::ValidationError("kind", "unknown function kind: " + name);
}

Vector draw_start(const TestFunction& f, double radius, Rng rng) {
  Vector x0 = f.x_star();
  Vector dir(x0.size());
  for (double& v : dir) v = rng.normal();
  const double len = std::max(norm(dir), 1e-300);
  for (size_t j = 0; j < x0.size(); ++j) x0[j] += radius * dir[j] / len;
  return x0;
}

void write_csv_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv output: " + path);
  out << body;
}

int as_exit(bool ok) { return ok ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convergence-rate certification for first-order methods"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "configuration file with key = value lines");
  app.set_version_flag("--version", kToolVersion);

  uint64_t seed = 0;
  bool pretty = false;
  app.add_option("--seed", seed, "rng seed")->envname("RATECERT_SEED");
  app.add_flag("--pretty", pretty, "human-readable report tables");

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "verify or solve a fixed-rate certificate");
  MethodFlags certify_flags;
  certify_flags.attach(certify_cmd);
  double certify_rho_sq = -1.0;
  bool analytic = false;
  bool solve_lambda = false;
  bool strict_storage = false;
  std::vector<double> user_storage;
  certify_cmd->add_option("--rho2", certify_rho_sq, "squared rate to certify (default nominal)");
  certify_cmd->add_flag("--analytic", analytic, "use the closed-form nominal certificate");
  certify_cmd->add_flag("--solve-lambda", solve_lambda, "solve a weight for the descent supply");
  certify_cmd->add_flag("--strict-storage", strict_storage, "require strictly positive storage");
  certify_cmd->add_option("--P", user_storage, "verify a user storage matrix (p11[,p12,p22])");

  // bisect
  auto* bisect_cmd = app.add_subcommand("bisect", "bisect for the smallest certifiable rate");
  MethodFlags bisect_flags;
  bisect_flags.attach(bisect_cmd);
  double bisect_tol = 5e-4;
  bisect_cmd->add_option("--tol", bisect_tol, "rate-grid resolution")->check(CLI::PositiveNumber);

  // sublinear
  auto* sub_cmd = app.add_subcommand("sublinear", "certify a sublinear rate family");
  std::string sub_path = "nesterov";
  double sub_L = 1.0;
  double sub_alpha = 0.0;
  int sub_K = 500;
  sub_cmd->add_option("path", sub_path, "gd | nesterov")->required();
  sub_cmd->add_option("--L", sub_L, "smoothness constant")->check(CLI::PositiveNumber);
  sub_cmd->add_option("--alpha", sub_alpha, "gd step size (default 1/L)");
  sub_cmd->add_option("--K", sub_K, "certificate horizon");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run a method on a synthetic objective");
  MethodFlags sim_flags;
  sim_flags.attach(sim_cmd);
  int sim_p = 8;
  int sim_K = 200;
  double sim_radius = 1.0;
  double sim_rho_sq = -1.0;
  bool sim_audit = false;
  std::string sim_kind = "auto";
  std::string sim_csv;
  sim_cmd->add_option("--p", sim_p, "problem dimension")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--K", sim_K, "steps");
  sim_cmd->add_option("--radius", sim_radius, "start distance from the minimizer");
  sim_cmd->add_option("--rho2", sim_rho_sq, "rate used by the audit supplies");
  sim_cmd->add_option("--kind", sim_kind, "objective kind (auto|quadratic|quadratic-convex|logsumexp)");
  sim_cmd->add_flag("--audit", sim_audit, "audit supply rates and bounds along the run");
  sim_cmd->add_option("--csv", sim_csv, "write the trajectory table to this file");

  // ode
  auto* ode_cmd = app.add_subcommand("ode", "integrate the accelerated-gradient flow and audit it");
  double ode_m = 1.0, ode_L = 10.0, ode_t0 = 0.1, ode_T = 20.0, ode_h = 1e-3, ode_radius = 1.0;
  int ode_p = 2;
  std::string ode_csv;
  ode_cmd->add_option("--m", ode_m, "strong-convexity modulus");
  ode_cmd->add_option("--L", ode_L, "smoothness constant")->check(CLI::PositiveNumber);
  ode_cmd->add_option("--p", ode_p, "problem dimension")->check(CLI::PositiveNumber);
  ode_cmd->add_option("--t0", ode_t0, "start time (> 0)")->check(CLI::PositiveNumber);
  ode_cmd->add_option("--T", ode_T, "end time");
  ode_cmd->add_option("--step", ode_h, "integration step")->check(CLI::PositiveNumber);
  ode_cmd->add_option("--radius", ode_radius, "start distance from the minimizer");
  ode_cmd->add_option("--csv", ode_csv, "write the time grid table to this file");

  // collapse
  auto* collapse_cmd = app.add_subcommand("collapse", "check the geometric time-varying collapse");
  MethodFlags collapse_flags;
  collapse_flags.attach(collapse_cmd);
  double collapse_rho_sq = -1.0;
  int collapse_K = 10;
  collapse_cmd->add_option("--rho2", collapse_rho_sq, "squared rate (default nominal)");
  collapse_cmd->add_option("--K", collapse_K, "horizon");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "fan a certification over parameter grids");
  std::string sweep_family = "nesterov";
  std::vector<double> sweep_m = {1.0};
  std::vector<double> sweep_L = {10.0};
  std::string sweep_mode = "analytic";
  sweep_cmd->add_option("family", sweep_family, "method family")->required();
  sweep_cmd->add_option("--m", sweep_m, "list of strong-convexity moduli")->delimiter(',');
  sweep_cmd->add_option("--L", sweep_L, "list of smoothness constants")->delimiter(',');
  sweep_cmd->add_option("--mode", sweep_mode, "analytic | bisect");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Emitter emit{pretty, std::chrono::steady_clock::now()};

  try {
    if (app.got_subcommand(certify_cmd)) {
      const MethodSpec spec = certify_flags.build();
      ReportRecord record;
      record.command = "certify";
      record.seed = seed;
      certify_flags.echo(record, spec);
      const double rho_sq = certify_rho_sq >= 0.0 ? certify_rho_sq : default_rate(spec);
      record.rho_sq = rho_sq;

      if (analytic) {
        const RateCertificate cert = analytic_nesterov(spec.fclass);
        record.rho_sq = cert.rho_sq;
        record.residual_eigs = cert.residual_eigs;
        record.status = "Certified";
        record.text_params.emplace_back("provenance", provenance_name(cert.provenance));
        emit(record);
        return 0;
      }
      if (!user_storage.empty()) {
        SymmetricMatrix P(spec.state_dim());
        if (spec.state_dim() == 1 && user_storage.size() == 1) {
          P.set(0, 0, user_storage[0]);
        } else if (spec.state_dim() == 2 && user_storage.size() == 3) {
          P.set(0, 0, user_storage[0]);
          P.set(0, 1, user_storage[1]);
          P.set(1, 1, user_storage[2]);
        } else {
          throw std::invalid_argument("--P expects 1 value for gd, 3 for accelerated families");
        }
        const VerifyReport report = verify_certificate(spec, rho_sq, P);
        record.residual_eigs = report.residual_eigs;
        record.status = report.holds() ? "Certified" : "NoCertificate";
        record.text_params.emplace_back("provenance", "user");
        emit(record);
        return as_exit(report.holds());
      }

      CertifyOptions options;
      options.solve.seed = seed;
      options.strict_storage = strict_storage;
      options.include_descent_supply = solve_lambda;
      const CertifyOutcome outcome = certify_at_rate(spec, rho_sq, options);
      record.text_params.emplace_back("solver_status", status_name(outcome.result.status));
      record.params.emplace_back("merit", outcome.result.merit);
      if (outcome.certificate.has_value()) {
        record.residual_eigs = outcome.certificate->residual_eigs;
        record.status = "Certified";
      } else {
        record.status = outcome.result.status == FeasibilityStatus::Infeasible ? "NoCertificate"
                                                                               : "Inconclusive";
      }
      emit(record);
      return as_exit(record.status == "Certified");
    }

    if (app.got_subcommand(bisect_cmd)) {
      const MethodSpec spec = bisect_flags.build();
      BisectOptions options;
      options.tol_rho_sq = bisect_tol;
      options.certify.solve.seed = seed;
      const BisectResult result = bisect_rate(spec, options);

      ReportRecord record;
      record.command = "bisect";
      record.seed = seed;
      bisect_flags.echo(record, spec);
      record.params.emplace_back("tol", bisect_tol);
      record.params.emplace_back("probes", static_cast<double>(result.probes.size()));
      if (result.no_certificate) {
        record.status = "NoCertificate";
        emit(record);
        return 1;
      }
      record.rho_sq = result.rho_sq_star;
      if (result.certificate.has_value()) record.residual_eigs = result.certificate->residual_eigs;
      if (result.inconclusive_lo <= result.inconclusive_hi) {
        record.params.emplace_back("inconclusive_lo", result.inconclusive_lo);
        record.params.emplace_back("inconclusive_hi", result.inconclusive_hi);
      }
      if (result.monotone_warning) record.text_params.emplace_back("warning", "non-monotone probes");
      record.status = "Certified";
      emit(record);
      return 0;
    }

    if (app.got_subcommand(sub_cmd)) {
      ReportRecord record;
      record.command = "sublinear";
      record.seed = seed;
      record.text_params.emplace_back("path", sub_path);
      record.params.emplace_back("L", sub_L);
      if (sub_path == "gd") {
        const double alpha = sub_alpha > 0.0 ? sub_alpha : 1.0 / sub_L;
        const SublinearGdCertificate cert = certify_sublinear_gd(sub_L, alpha);
        record.params.emplace_back("alpha", alpha);
        record.params.emplace_back("storage_weight", cert.storage_weight);
        record.bound = cert.storage_weight;  // min gap over k <= T is bounded by this over T+1
        record.residual_eigs = eigenvalues(cert.residual);
        record.status = cert.holds() ? "Certified" : "NoCertificate";
        emit(record);
        return as_exit(cert.holds());
      }
      if (sub_path != "nesterov") throw std::invalid_argument("sublinear path must be gd or nesterov");
      const SublinearCertificate cert = certify_sublinear_nesterov(sub_L, sub_K);
      record.params.emplace_back("K", sub_K);
      record.max_slack = cert.max_abs_residual;
      record.params.emplace_back("min_storage_eig", cert.min_storage_eig);
      record.bound = cert.sched.mu(sub_K);
      record.text_params.emplace_back("bound_constant", cert.bound_constant);
      const bool ok = cert.max_abs_residual <= 1e-6 * sub_L &&
                      cert.min_storage_eig >= -1e-9 * std::max(1.0, sub_L);
      record.status = ok ? "Certified" : "NoCertificate";
      emit(record);
      return as_exit(ok);
    }

    if (app.got_subcommand(sim_cmd)) {
      MethodFlags flags = sim_flags;
      TestFunctionKind kind = parse_kind(sim_kind, flags.m);
      if (flags.family == "nesterov-sublinear") {
        flags.m = 0.0;
        if (sim_kind == "auto") kind = TestFunctionKind::QuadraticConvex;
      }
      if (kind == TestFunctionKind::QuadraticConvex) flags.m = 0.0;
      const MethodSpec spec = flags.build();
      const TestFunction f = make_function(kind, flags.m, flags.L, sim_p, seed);
      Rng rng(seed);
      const Vector x0 = draw_start(f, sim_radius, rng.fork(1));
      const Trajectory traj = run(spec, f, x0, sim_K);

      ReportRecord record;
      record.command = "simulate";
      record.seed = seed;
      flags.echo(record, spec);
      record.text_params.emplace_back("kind", kind_name(kind));
      record.params.emplace_back("p", sim_p);
      record.params.emplace_back("K", sim_K);
      record.params.emplace_back("final_gap", traj.fx.back() - f.f_star());

      AuditArtifacts artifacts;
      if (sim_audit || !sim_csv.empty()) {
        artifacts.function_inequalities = true;
        const double rho_sq = sim_rho_sq >= 0.0 ? sim_rho_sq : default_rate(spec);
        switch (spec.family) {
          case MethodFamily::GradientDescent:
            if (spec.fclass.m > 0.0) {
              artifacts.supplies = {gd_supply(spec.fclass, GdSupplyMode::StronglyConvex)};
            } else {
              artifacts.supplies = {gd_supply(spec.fclass, GdSupplyMode::Convex)};
              artifacts.sublinear_gd = certify_sublinear_gd(spec.fclass.L, spec.alpha);
            }
            break;
          case MethodFamily::Nesterov: {
            const NesterovSupply s = nesterov_supply(spec.fclass, spec.alpha, spec.beta, rho_sq);
            artifacts.supplies = {s.decrease, s.gap, s.combined};
            if (flags.alpha <= 0.0 && flags.beta <= -2.0) {
              artifacts.certificate = analytic_nesterov(spec.fclass);
            }
            break;
          }
          case MethodFamily::HeavyBall:
          case MethodFamily::GeneralAccelerated: {
            const GeneralSupply s =
                general_supply(spec.fclass, spec.alpha, spec.beta, spec.eta, rho_sq);
            artifacts.supplies = {s.decrease, s.gap, s.combined};
            break;
          }
          case MethodFamily::NesterovSublinear:
            artifacts.schedule_supplies = true;
            artifacts.sublinear_bound = true;
            break;
        }
      }

      bool ok = true;
      if (sim_audit) {
        const AuditReport report = audit(traj, f, artifacts);
        ok = report.pass();
        record.max_slack = report.max_slack();
        record.params.emplace_back("audit_tol", report.tol);
        record.status = ok ? "Passed" : "Failed";
      } else {
        record.status = "Completed";
      }
      if (!sim_csv.empty()) {
        std::ostringstream body;
        write_trajectory_csv(body, audit_table(traj, f, artifacts));
        write_csv_file(sim_csv, body.str());
        record.text_params.emplace_back("csv", sim_csv);
      }
      emit(record);
      return as_exit(ok);
    }

    if (app.got_subcommand(ode_cmd)) {
      const TestFunctionKind kind =
          ode_m > 0.0 ? TestFunctionKind::QuadraticSC : TestFunctionKind::QuadraticConvex;
      const TestFunction f = make_function(kind, ode_m, ode_L, ode_p, seed);
      Rng rng(seed);
      const Vector x0 = draw_start(f, ode_radius, rng.fork(1));
      const ContinuousTrajectory traj = integrate(f, x0, ode_t0, ode_T, ode_h);
      const CtAuditReport report = audit_ct(traj, f);

      ReportRecord record;
      record.command = "ode";
      record.seed = seed;
      record.params.emplace_back("m", ode_m);
      record.params.emplace_back("L", ode_L);
      record.params.emplace_back("p", ode_p);
      record.params.emplace_back("t0", ode_t0);
      record.params.emplace_back("T", ode_T);
      record.params.emplace_back("h", ode_h);
      record.params.emplace_back("lyapunov_t0", report.v0);
      record.params.emplace_back("monotone_drift", report.monotone_drift);
      record.params.emplace_back("lmi_residual_max", report.max_lmi_residual);
      record.params.emplace_back("rate_bound_slack", report.rate_bound_slack);
      record.max_slack = report.max_supply_slack;

      const double scale = std::max(report.v0, 1e-300);
      const bool ok = report.monotone_drift <= 1e-6 * scale &&
                      report.max_lmi_residual <= 1e-10 * std::max(1.0, ode_T * ode_T) &&
                      report.max_supply_slack <= 1e-8 * std::max(1.0, ode_L * scale) &&
                      report.rate_bound_slack <= 1e-8 * scale;
      record.status = ok ? "Passed" : "Failed";
      emit(record);
      return as_exit(ok);
    }

    if (app.got_subcommand(collapse_cmd)) {
      const MethodSpec spec = collapse_flags.build();
      const double rho_sq = collapse_rho_sq >= 0.0 ? collapse_rho_sq : default_rate(spec);
      SymmetricMatrix P(spec.state_dim());
      if (spec.family == MethodFamily::GradientDescent) {
        P.set(0, 0, spec.fclass.L * spec.fclass.L);
      } else {
        P = analytic_nesterov(spec.fclass).P;
      }
      const double deviation = collapse_check(spec, rho_sq, P, collapse_K);

      ReportRecord record;
      record.command = "collapse";
      record.seed = seed;
      collapse_flags.echo(record, spec);
      record.rho_sq = rho_sq;
      record.params.emplace_back("K", collapse_K);
      record.max_slack = deviation;
      const bool ok = deviation <= 1e-9;
      record.status = ok ? "Passed" : "Failed";
      emit(record);
      return as_exit(ok);
    }

    if (app.got_subcommand(sweep_cmd)) {
      struct Item {
        double m;
        double L;
      };
      std::vector<Item> items;
      for (double m : sweep_m)
        for (double L : sweep_L) items.push_back({m, L});

      std::vector<std::future<ReportRecord>> futures;
      futures.reserve(items.size());
      for (size_t i = 0; i < items.size(); ++i) {
        futures.push_back(std::async(std::launch::async, [&, i]() {
          const Item item = items[i];
          ReportRecord record;
          record.command = "sweep";
          record.seed = seed;
          record.text_params.emplace_back("family", sweep_family);
          record.text_params.emplace_back("mode", sweep_mode);
          record.params.emplace_back("index", static_cast<double>(i));
          record.params.emplace_back("m", item.m);
          record.params.emplace_back("L", item.L);
          MethodFlags flags;
          flags.family = sweep_family;
          flags.m = item.m;
          flags.L = item.L;
          const MethodSpec spec = flags.build();
          if (sweep_mode == "analytic") {
            const RateCertificate cert = analytic_nesterov(spec.fclass);
            record.rho_sq = cert.rho_sq;
            record.residual_eigs = cert.residual_eigs;
            record.status = "Certified";
          } else if (sweep_mode == "bisect") {
            BisectOptions options;
            options.certify.solve.seed = seed;
            const BisectResult result = bisect_rate(spec, options);
            if (result.no_certificate) {
              record.status = "NoCertificate";
            } else {
              record.rho_sq = result.rho_sq_star;
              if (result.certificate.has_value())
                record.residual_eigs = result.certificate->residual_eigs;
              record.status = "Certified";
            }
          } else {
            throw std::invalid_argument("sweep mode must be analytic or bisect");
          }
          return record;
        }));
      }
      bool all_ok = true;
      for (auto& fut : futures) {
        const ReportRecord record = fut.get();
        all_ok = all_ok && record.status == "Certified";
        emit(record);
      }
      return as_exit(all_ok);
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.get_name() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::cerr << "error: no command\n";
  return 2;
}
