#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratecert/continuous.hpp"
#include "ratecert/simulate.hpp"

namespace ratecert {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// One line-delimited JSON record per command invocation. Doubles are
/// serialized with shortest round-trip formatting, so records parse back to
/// the exact values (17 significant digits).
struct ReportRecord {
  std::string command;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, std::string>> text_params;
  std::string status;
  std::optional<double> rho_sq;
  std::vector<double> residual_eigs;
  std::optional<double> max_slack;
  std::optional<double> bound;
  uint64_t seed = 0;
  double duration_ms = 0.0;

  std::string to_json() const;
  static ReportRecord from_json(const std::string& line);
  /// Aligned key/value block for human consumption.
  std::string to_pretty() const;
};

/// Discrete trajectory export: columns k, f_gap, grad_norm, lyapunov, then
/// one slack_<name> column per audited inequality. Undefined cells are empty.
void write_trajectory_csv(std::ostream& out, const AuditTable& table);

/// Continuous trajectory export: columns t, f_gap, V, G, lyapunov,
/// lmi_residual_max.
void write_ct_csv(std::ostream& out, const ContinuousTrajectory& traj, const TestFunction& f);

}  // namespace ratecert
