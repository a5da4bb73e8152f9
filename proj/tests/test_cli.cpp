// End-to-end checks against the built binary: exit codes, report schema,
// and determinism of report bodies for a fixed seed.

#include <array>
#include <cmath>
#include <cstdio>
#include <regex>
#include <string>

#include "doctest.h"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RATECERT_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) result.output += buffer.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string strip_duration(std::string body) {
  static const std::regex duration(R"("duration_ms":[0-9.eE+-]+)");
  return std::regex_replace(body, duration, "\"duration_ms\":0");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analytic certification succeeds with the expected rate") {
  const CliResult result = run_cli("certify nesterov --m 1 --L 100 --analytic");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"status\":\"Certified\"") != std::string::npos);
  CHECK(result.output.find("\"rho_sq\":0.9") != std::string::npos);
  CHECK(result.output.find("\"schema_version\":1") != std::string::npos);
}

TEST_CASE("gradient descent bisection lands at the classical rate") {
  const CliResult result = run_cli("bisect gd --m 1 --L 10 --alpha 0.1");
  CHECK(result.exit_code == 0);
  const std::smatch match = [&] {
    std::smatch m;
    std::regex_search(result.output, m, std::regex(R"("rho_sq":([0-9.eE+-]+))"));
    return m;
  }();
  REQUIRE(match.size() == 2);
  const double rho_sq = std::stod(match[1]);
  CHECK(std::sqrt(rho_sq) <= 0.901);
}

TEST_CASE("sublinear schedule certification reports a tiny residual") {
  const CliResult result = run_cli("sublinear nesterov --L 1 --K 500");
  CHECK(result.exit_code == 0);
  std::smatch match;
  REQUIRE(std::regex_search(result.output, match, std::regex(R"("max_slack":([0-9.eE+-]+))")));
  CHECK(std::stod(match[1]) <= 1e-6);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("certify nosuchmethod --m 1 --L 10").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("audited simulation passes and infeasible certification fails") {
  const CliResult sim =
      run_cli("simulate nesterov --m 1 --L 10 --p 4 --K 50 --seed 3 --audit");
  CHECK(sim.exit_code == 0);
  CHECK(sim.output.find("\"status\":\"Passed\"") != std::string::npos);

  const CliResult infeasible = run_cli("certify nesterov --m 1 --L 100 --rho2 0.5 --seed 1");
  CHECK(infeasible.exit_code == 1);
  CHECK(infeasible.output.find("NoCertificate") != std::string::npos);
}

TEST_CASE("identical seeds give byte-identical report bodies") {
  const std::string args = "simulate nesterov --m 1 --L 10 --p 4 --K 30 --seed 11 --audit";
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  CHECK(strip_duration(a.output) == strip_duration(b.output));
  CHECK(a.output.find("\"seed\":11") != std::string::npos);
}

TEST_CASE("environment seed is honored and overridden by the flag") {
  const CliResult env = [&] {
    const std::string cmd = std::string("RATECERT_SEED=21 ") + RATECERT_CLI_PATH +
                            " certify nesterov --m 1 --L 100 --analytic 2>&1";
    std::array<char, 4096> buffer{};
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) r.output += buffer.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }();
  CHECK(env.output.find("\"seed\":21") != std::string::npos);

  const CliResult flag = [&] {
    const std::string cmd = std::string("RATECERT_SEED=21 ") + RATECERT_CLI_PATH +
                            " certify nesterov --m 1 --L 100 --analytic --seed 5 2>&1";
    std::array<char, 4096> buffer{};
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) r.output += buffer.data();
    pclose(pipe);
    return r;
  }();
  CHECK(flag.output.find("\"seed\":5") != std::string::npos);
}

TEST_CASE("sweep emits one record per grid point in input order") {
  const CliResult result = run_cli("sweep nesterov --m 1 --L 4,25,100 --mode analytic");
  CHECK(result.exit_code == 0);
  const std::string& out = result.output;
  const size_t first = out.find("\"index\":0");
  const size_t second = out.find("\"index\":1");
  const size_t third = out.find("\"index\":2");
  REQUIRE(first != std::string::npos);
  REQUIRE(second != std::string::npos);
  REQUIRE(third != std::string::npos);
  CHECK(first < second);
  CHECK(second < third);
  CHECK(out.find("\"rho_sq\":0.5") != std::string::npos);   // L = 4
  CHECK(out.find("\"rho_sq\":0.8") != std::string::npos);   // L = 25
  CHECK(out.find("\"rho_sq\":0.9") != std::string::npos);   // L = 100
}

TEST_CASE("config file presets flags and the command line overrides them") {
  const std::string path = "/tmp/ratecert_test_config.ini";
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs("seed = 33\n", f);
    fclose(f);
  }
  const CliResult from_config =
      run_cli("certify nesterov --m 1 --L 100 --analytic --config " + path);
  CHECK(from_config.output.find("\"seed\":33") != std::string::npos);
  const CliResult overridden =
      run_cli("certify nesterov --m 1 --L 100 --analytic --config " + path + " --seed 44");
  CHECK(overridden.output.find("\"seed\":44") != std::string::npos);
  remove(path.c_str());
}

TEST_CASE("user-supplied storage is verified, not solved") {
  const CliResult good =
      run_cli("certify gd --m 1 --L 10 --alpha 0.1 --rho2 0.81 --P 100");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("\"status\":\"Certified\"") != std::string::npos);
  CHECK(good.output.find("\"provenance\":\"user\"") != std::string::npos);

  const CliResult bad = run_cli("certify gd --m 1 --L 10 --alpha 0.1 --rho2 0.5 --P 100");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("NoCertificate") != std::string::npos);
}

TEST_CASE("csv export writes the documented columns") {
  const std::string path = "/tmp/ratecert_test_traj.csv";
  const CliResult result = run_cli("simulate gd --m 1 --L 10 --p 3 --K 20 --seed 2 --audit --csv " + path);
  CHECK(result.exit_code == 0);
  FILE* f = fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char line[512] = {0};
  REQUIRE(fgets(line, sizeof(line), f) != nullptr);
  fclose(f);
  remove(path.c_str());
  CHECK(std::string(line).rfind("k,f_gap,grad_norm,lyapunov", 0) == 0);
}

}  // TEST_SUITE
