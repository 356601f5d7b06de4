#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/families.hpp"
#include "core/report.hpp"

namespace repi {

enum class ExperimentKind {
  classical_weighted,
  classical_unweighted,
  shannon_limit,
  young_equality,
  lemma_search,
  pinf_search,
  quantum,
};

struct SweepConfig {
  ExperimentKind kind = ExperimentKind::classical_weighted;
  uint64_t seed = 1;
  int dimension = 1;
  std::vector<AnalyticDensity> families;
  std::string pair_policy = "unordered";  // unordered | ordered | zip
  std::vector<double> p_grid;
  std::vector<double> t_grid;
  std::vector<double> tau_grid;
  // "boundary" uses (p+1)/2; otherwise a fixed exponent
  bool alpha_boundary = true;
  double alpha_fixed = 1.0;
  std::vector<long> n_grid;
  long ensemble_size = 100;
  double epsilon = 1e-3;          // shannon_limit bracket
  double tol_rel = 1e-6;
  double box_sigmas = 10.0;
  bool refine = true;
  double refine_threshold = 1.05;
  std::array<double, 3> young_triple{2.0, 4.0 / 3.0, 4.0 / 3.0};
  double young_tol = 1e-3;
  std::string pinf_mode = "alpha_one";
  double temperature_scale = 1.0;

  // throws config_error listing every invalid field by path
  static SweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Evaluates the full cross product of the configured grids. Cells are
// indexed lexicographically by grid position; all per-cell randomness is
// derived from (seed, cell position), so results do not depend on the worker
// count or scheduling order.
ExperimentReport run_sweep(const SweepConfig& cfg);

// worker pool width; the REPI_THREADS environment variable overrides
int worker_count();

// built-in sweeps used by the command-line front end
SweepConfig default_weighted_sweep();
SweepConfig default_unweighted_sweep();
SweepConfig default_quantum_sweep();
SweepConfig default_pinf_sweep(const std::string& mode);

}  // namespace repi
