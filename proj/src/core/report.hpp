#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace repi {

// One inequality evaluation: both sides, their ratio, and the pass flag
// ratio >= 1 - tol_rel. `refinement_estimate` is |ratio(N) - ratio(2N)| when
// a refinement pass ran.
struct EpiCheckCell {
  std::string experiment;
  long cell_index = 0;
  std::string family_x;
  std::string family_y;
  double p = 0.0;
  double alpha = 0.0;                 // alpha or kappa
  std::optional<double> t;            // t or tau; absent for unweighted runs
  long n = 0;
  int dim = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double refinement_estimate = 0.0;
  bool pass = true;
  std::string error;  // non-empty when the cell failed numerically
};

struct ReportSummary {
  uint64_t cell_count = 0;
  uint64_t violation_count = 0;
  double min_ratio = 0.0;
  double max_refinement_estimate = 0.0;
  double wall_time_seconds = 0.0;
};

struct ExperimentReport {
  nlohmann::json config_echo;
  std::vector<EpiCheckCell> cells;
  ReportSummary summary;
  std::string tool_version;
  uint64_t seed = 0;
  std::string timestamp;

  // derives the summary (except wall time) from the cells
  void finalize(double wall_seconds);
};

// canonical mode zeroes the timestamp and wall time so two runs of the same
// config can be compared byte for byte
std::string emit_json(const ExperimentReport& report, bool canonical = false);
std::string emit_csv(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);

nlohmann::json cell_to_json(const EpiCheckCell& cell);
EpiCheckCell cell_from_json(const nlohmann::json& j);

}  // namespace repi
