#include "ratecert/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "ratecert/rng.hpp"

using namespace ratecert;

TEST_SUITE("report") {

TEST_CASE("records round-trip losslessly") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    ReportRecord record;
    record.command = "certify";
    record.params.emplace_back("m", rng.uniform(1e-8, 1e8));
    record.params.emplace_back("L", std::exp(rng.uniform(-20.0, 20.0)));
    record.text_params.emplace_back("family", "nesterov");
    record.status = "Certified";
    record.rho_sq = rng.uniform();
    record.residual_eigs = {rng.normal() * 1e-7, 0.0, rng.normal()};
    record.max_slack = rng.normal() * 1e-12;
    record.bound = rng.uniform(0.0, 1e6);
    record.seed = rng.next_u64();
    record.duration_ms = rng.uniform(0.0, 5000.0);

    const ReportRecord parsed = ReportRecord::from_json(record.to_json());
    CHECK(parsed.command == record.command);
    CHECK(parsed.status == record.status);
    REQUIRE(parsed.params.size() == record.params.size());
    for (size_t i = 0; i < record.params.size(); ++i) {
      CHECK(parsed.params[i].first == record.params[i].first);
      CHECK(parsed.params[i].second == record.params[i].second);
    }
    CHECK(*parsed.rho_sq == *record.rho_sq);
    REQUIRE(parsed.residual_eigs.size() == record.residual_eigs.size());
    for (size_t i = 0; i < record.residual_eigs.size(); ++i) {
      CHECK(parsed.residual_eigs[i] == record.residual_eigs[i]);
    }
    CHECK(*parsed.max_slack == *record.max_slack);
    CHECK(*parsed.bound == *record.bound);
    CHECK(parsed.seed == record.seed);
    CHECK(parsed.duration_ms == record.duration_ms);
  }
}

TEST_CASE("identical records serialize identically") {
  ReportRecord record;
  record.command = "bisect";
  record.params.emplace_back("L", 10.0);
  record.status = "Certified";
  record.rho_sq = 0.6848;
  record.seed = 7;
  record.duration_ms = 0.0;
  CHECK(record.to_json() == record.to_json());
}

TEST_CASE("trajectory csv has the fixed column header") {
  AuditTable table;
  table.slack_names = {"supply_rate_decrease", "lyapunov_decrease"};
  AuditTable::Row row;
  row.k = 0;
  row.f_gap = 1.25;
  row.grad_norm = 0.5;
  row.lyapunov = std::numeric_limits<double>::quiet_NaN();
  row.slacks = {-1e-9, std::numeric_limits<double>::quiet_NaN()};
  table.rows.push_back(row);

  std::ostringstream out;
  write_trajectory_csv(out, table);
  const std::string text = out.str();
  CHECK(text.find("k,f_gap,grad_norm,lyapunov,slack_supply_rate_decrease,slack_lyapunov_decrease\n") == 0);
  CHECK(text.find("0,1.25,0.5,,-1.0000000000000001e-09,\n") != std::string::npos);
}

TEST_CASE("continuous csv has the fixed column header") {
  const TestFunction f = make_function(TestFunctionKind::QuadraticSC, 1.0, 4.0, 2, 3);
  const ContinuousTrajectory traj = integrate(f, f.x_star(), 0.5, 6.0, 0.5);
  std::ostringstream out;
  write_ct_csv(out, traj, f);
  CHECK(out.str().find("t,f_gap,V,G,lyapunov,lmi_residual_max\n") == 0);
}

TEST_CASE("pretty rendering carries the command and status") {
  ReportRecord record;
  record.command = "certify";
  record.status = "Certified";
  record.rho_sq = 0.9;
  const std::string text = record.to_pretty();
  CHECK(text.find("certify") == 0);
  CHECK(text.find("status") != std::string::npos);
  CHECK(text.find("Certified") != std::string::npos);
}

}  // TEST_SUITE
