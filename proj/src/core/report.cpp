#include "core/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "core/errors.hpp"
#include "core/version.hpp"

namespace repi {

void ExperimentReport::finalize(double wall_seconds) {
  summary.cell_count = cells.size();
  summary.violation_count = 0;
  summary.min_ratio = std::numeric_limits<double>::quiet_NaN();
  summary.max_refinement_estimate = 0.0;
  for (const auto& c : cells) {
    if (!c.pass) ++summary.violation_count;
    if (c.error.empty() && std::isfinite(c.ratio)) {
      if (!std::isfinite(summary.min_ratio) || c.ratio < summary.min_ratio)
        summary.min_ratio = c.ratio;
    }
    summary.max_refinement_estimate =
        std::max(summary.max_refinement_estimate, c.refinement_estimate);
  }
  summary.wall_time_seconds = wall_seconds;
  tool_version = kToolVersion;
}

nlohmann::json cell_to_json(const EpiCheckCell& cell) {
  nlohmann::json j;
  j["experiment"] = cell.experiment;
  j["cell_index"] = cell.cell_index;
  j["family_x"] = cell.family_x;
  j["family_y"] = cell.family_y;
  j["p"] = cell.p;
  j["alpha_or_kappa"] = cell.alpha;
  if (cell.t)
    j["t_or_tau"] = *cell.t;
  else
    j["t_or_tau"] = nullptr;
  j["n"] = cell.n;
  j["dim"] = cell.dim;
  j["lhs"] = cell.lhs;
  j["rhs"] = cell.rhs;
  j["ratio"] = cell.ratio;
  j["refinement_estimate"] = cell.refinement_estimate;
  j["pass"] = cell.pass;
  j["error"] = cell.error;
  return j;
}

EpiCheckCell cell_from_json(const nlohmann::json& j) {
  EpiCheckCell c;
  c.experiment = j.at("experiment").get<std::string>();
  c.cell_index = j.at("cell_index").get<long>();
  c.family_x = j.at("family_x").get<std::string>();
  c.family_y = j.at("family_y").get<std::string>();
  c.p = j.at("p").get<double>();
  c.alpha = j.at("alpha_or_kappa").get<double>();
  if (!j.at("t_or_tau").is_null()) c.t = j.at("t_or_tau").get<double>();
  c.n = j.at("n").get<long>();
  c.dim = j.at("dim").get<int>();
  c.lhs = j.at("lhs").get<double>();
  c.rhs = j.at("rhs").get<double>();
  c.ratio = j.at("ratio").get<double>();
  c.refinement_estimate = j.at("refinement_estimate").get<double>();
  c.pass = j.at("pass").get<bool>();
  c.error = j.at("error").get<std::string>();
  return c;
}

namespace {

nlohmann::json summary_to_json(const ReportSummary& s) {
  nlohmann::json j;
  j["cell_count"] = s.cell_count;
  j["violation_count"] = s.violation_count;
  if (std::isfinite(s.min_ratio))
    j["min_ratio"] = s.min_ratio;
  else
    j["min_ratio"] = nullptr;
  j["max_refinement_estimate"] = s.max_refinement_estimate;
  j["wall_time_seconds"] = s.wall_time_seconds;
  return j;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string emit_json(const ExperimentReport& report, bool canonical) {
  nlohmann::json j;
  j["config"] = report.config_echo;
  // fixed evaluation conventions, stated so results can be reinterpreted
  j["conventions"] = {
      {"entropy_power_scaling", "V_p(sqrt(t) X) = t * V_p(X)"},
      {"quantum_entropy_power", "V_p(rho) = exp(H_p(rho) / D)"}};
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) cells.push_back(cell_to_json(c));
  j["cells"] = std::move(cells);
  auto s = report.summary;
  if (canonical) s.wall_time_seconds = 0.0;
  j["summary"] = summary_to_json(s);
  j["provenance"] = {{"tool_version", report.tool_version},
                     {"seed", report.seed},
                     {"timestamp", canonical ? "" : report.timestamp}};
  return j.dump(2) + "\n";
}

std::string emit_csv(const ExperimentReport& report) {
  std::string out =
      "experiment,cell_index,p,alpha_or_kappa,t_or_tau,family_x,family_y,N,"
      "lhs,rhs,ratio,refinement_estimate,pass\n";
  for (const auto& c : report.cells) {
    out += c.experiment;
    out += ',';
    out += std::to_string(c.cell_index);
    out += ',';
    out += fmt_double(c.p);
    out += ',';
    out += fmt_double(c.alpha);
    out += ',';
    if (c.t) out += fmt_double(*c.t);
    out += ',';
    out += c.family_x;
    out += ',';
    out += c.family_y;
    out += ',';
    out += std::to_string(c.n);
    out += ',';
    out += fmt_double(c.lhs);
    out += ',';
    out += fmt_double(c.rhs);
    out += ',';
    out += fmt_double(c.ratio);
    out += ',';
    out += fmt_double(c.refinement_estimate);
    out += ',';
    out += c.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

ExperimentReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("report parse failure: ") + e.what());
  }
  ExperimentReport r;
  r.config_echo = j.at("config");
  for (const auto& cj : j.at("cells")) r.cells.push_back(cell_from_json(cj));
  const auto& s = j.at("summary");
  r.summary.cell_count = s.at("cell_count").get<uint64_t>();
  r.summary.violation_count = s.at("violation_count").get<uint64_t>();
  r.summary.min_ratio = s.at("min_ratio").is_null()
                            ? std::numeric_limits<double>::quiet_NaN()
                            : s.at("min_ratio").get<double>();
  r.summary.max_refinement_estimate =
      s.at("max_refinement_estimate").get<double>();
  r.summary.wall_time_seconds = s.at("wall_time_seconds").get<double>();
  r.tool_version = j.at("provenance").at("tool_version").get<std::string>();
  r.seed = j.at("provenance").at("seed").get<uint64_t>();
  r.timestamp = j.at("provenance").at("timestamp").get<std::string>();
  return r;
}

}  // namespace repi
