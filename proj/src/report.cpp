#include "ratecert/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "ratecert/lmi.hpp"

namespace ratecert {

namespace {

using Json = nlohmann::ordered_json;

std::string format_cell(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string ReportRecord::to_json() const {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  Json p = Json::object();
  for (const auto& [key, value] : params) p[key] = value;
  for (const auto& [key, value] : text_params) p[key] = value;
  j["params"] = p;
  j["status"] = status;
  if (rho_sq.has_value()) j["rho_sq"] = *rho_sq;
  j["residual_eigs"] = residual_eigs;
  if (max_slack.has_value()) j["max_slack"] = *max_slack;
  if (bound.has_value()) j["bound"] = *bound;
  j["seed"] = seed;
  j["version"] = kToolVersion;
  j["duration_ms"] = duration_ms;
  return j.dump();
}

ReportRecord ReportRecord::from_json(const std::string& line) {
  const Json j = Json::parse(line);
  ReportRecord record;
  record.command = j.at("command").get<std::string>();
  for (const auto& [key, value] : j.at("params").items()) {
    if (value.is_string()) {
      record.text_params.emplace_back(key, value.get<std::string>());
    } else {
      record.params.emplace_back(key, value.get<double>());
    }
  }
  record.status = j.at("status").get<std::string>();
  if (j.contains("rho_sq")) record.rho_sq = j.at("rho_sq").get<double>();
  record.residual_eigs = j.at("residual_eigs").get<std::vector<double>>();
  if (j.contains("max_slack")) record.max_slack = j.at("max_slack").get<double>();
  if (j.contains("bound")) record.bound = j.at("bound").get<double>();
  record.seed = j.at("seed").get<uint64_t>();
  record.duration_ms = j.at("duration_ms").get<double>();
  return record;
}

std::string ReportRecord::to_pretty() const {
  std::ostringstream out;
  auto line = [&](const std::string& key, const std::string& value) {
    out << "  " << key;
    for (size_t i = key.size(); i < 18; ++i) out << ' ';
    out << value << '\n';
  };
  out << command << '\n';
  line("status", status);
  for (const auto& [key, value] : text_params) line(key, value);
  for (const auto& [key, value] : params) line(key, format_cell(value));
  if (rho_sq.has_value()) line("rho_sq", format_cell(*rho_sq));
  if (!residual_eigs.empty()) {
    std::string eigs;
    for (size_t i = 0; i < residual_eigs.size(); ++i) {
      if (i > 0) eigs += ", ";
      eigs += format_cell(residual_eigs[i]);
    }
    line("residual_eigs", eigs);
  }
  if (max_slack.has_value()) line("max_slack", format_cell(*max_slack));
  if (bound.has_value()) line("bound", format_cell(*bound));
  line("seed", std::to_string(seed));
  line("duration_ms", format_cell(duration_ms));
  return out.str();
}

void write_trajectory_csv(std::ostream& out, const AuditTable& table) {
  out << "k,f_gap,grad_norm,lyapunov";
  for (const std::string& name : table.slack_names) out << ",slack_" << name;
  out << '\n';
  for (const AuditTable::Row& row : table.rows) {
    out << row.k << ',' << format_cell(row.f_gap) << ',' << format_cell(row.grad_norm) << ','
        << format_cell(row.lyapunov);
    for (double slack : row.slacks) out << ',' << format_cell(slack);
    out << '\n';
  }
}

void write_ct_csv(std::ostream& out, const ContinuousTrajectory& traj, const TestFunction& f) {
  out << "t,f_gap,V,G,lyapunov,lmi_residual_max\n";
  const Matrix B = flow_input_matrix();
  for (size_t i = 0; i < traj.t.size(); ++i) {
    const double t = traj.t[i];
    const double gap = traj.fY[i] - f.f_star();
    const double lyapunov = ct_lyapunov(traj, f, i);
    const double hidden = t * t * gap;
    const SymmetricMatrix lhs =
        assemble_ct_lhs(flow_state_matrix(t), B, ContinuousCertificate::storage(t),
                        ContinuousCertificate::storage_dot(t), ContinuousCertificate::supply(t));
    out << format_cell(t) << ',' << format_cell(gap) << ',' << format_cell(lyapunov - hidden) << ','
        << format_cell(hidden) << ',' << format_cell(lyapunov) << ',' << format_cell(lhs.max_abs())
        << '\n';
  }
}

}  // namespace ratecert
