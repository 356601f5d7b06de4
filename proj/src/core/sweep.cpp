#include "core/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <limits>
#include <thread>

#include "core/quantum.hpp"
#include "core/renyi.hpp"
#include "core/rng.hpp"
#include "core/young.hpp"

namespace repi {

namespace {

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::classical_weighted: return "classical_weighted";
    case ExperimentKind::classical_unweighted: return "classical_unweighted";
    case ExperimentKind::shannon_limit: return "shannon_limit";
    case ExperimentKind::young_equality: return "young_equality";
    case ExperimentKind::lemma_search: return "lemma_search";
    case ExperimentKind::pinf_search: return "pinf_search";
    case ExperimentKind::quantum: return "quantum";
  }
  return "unknown";
}

bool kind_from_name(const std::string& name, ExperimentKind& out) {
  for (ExperimentKind k :
       {ExperimentKind::classical_weighted, ExperimentKind::classical_unweighted,
        ExperimentKind::shannon_limit, ExperimentKind::young_equality,
        ExperimentKind::lemma_search, ExperimentKind::pinf_search,
        ExperimentKind::quantum}) {
    if (name == kind_name(k)) {
      out = k;
      return true;
    }
  }
  return false;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  std::vector<std::string> errors;
  SweepConfig cfg;

  auto fail = [&errors](const std::string& field, const std::string& why) {
    errors.push_back(field + ": " + why);
  };

  if (!j.is_object()) {
    throw config_error({"config: must be a JSON object"});
  }
  if (!j.contains("experiment") || !j.at("experiment").is_string()) {
    fail("experiment", "required string field");
  } else if (!kind_from_name(j.at("experiment").get<std::string>(), cfg.kind)) {
    fail("experiment", "unknown experiment kind '" +
                           j.at("experiment").get<std::string>() + "'");
  }

  auto get_num = [&](const char* field, double& dst, bool required,
                     auto&& predicate, const char* why) {
    if (!j.contains(field)) {
      if (required) fail(field, "required numeric field");
      return;
    }
    if (!j.at(field).is_number()) {
      fail(field, "must be a number");
      return;
    }
    const double v = j.at(field).get<double>();
    if (!predicate(v)) {
      fail(field, why);
      return;
    }
    dst = v;
  };

  if (j.contains("seed")) {
    if (j.at("seed").is_number_unsigned() || j.at("seed").is_number_integer())
      cfg.seed = j.at("seed").get<uint64_t>();
    else
      fail("seed", "must be an integer");
  }
  if (j.contains("dimension")) {
    const int d = j.at("dimension").is_number_integer()
                      ? j.at("dimension").get<int>()
                      : -1;
    if (d != 1 && d != 2)
      fail("dimension", "must be 1 or 2");
    else
      cfg.dimension = d;
  }
  if (j.contains("pair_policy")) {
    const std::string p = j.at("pair_policy").get<std::string>();
    if (p != "unordered" && p != "ordered" && p != "zip")
      fail("pair_policy", "must be one of unordered|ordered|zip");
    else
      cfg.pair_policy = p;
  }

  if (j.contains("families")) {
    if (!j.at("families").is_array()) {
      fail("families", "must be an array of family specs");
    } else {
      size_t i = 0;
      for (const auto& fj : j.at("families")) {
        try {
          cfg.families.push_back(AnalyticDensity::from_json(fj));
        } catch (const std::exception& e) {
          fail("families[" + std::to_string(i) + "]", e.what());
        }
        ++i;
      }
    }
  }

  auto get_grid = [&](const char* field, std::vector<double>& dst,
                      auto&& predicate, const char* why) {
    if (!j.contains(field)) return;
    if (!j.at(field).is_array()) {
      fail(field, "must be an array of numbers");
      return;
    }
    size_t i = 0;
    for (const auto& vj : j.at(field)) {
      if (!vj.is_number()) {
        fail(std::string(field) + "[" + std::to_string(i) + "]",
             "must be a number");
      } else {
        const double v = vj.get<double>();
        if (!predicate(v))
          fail(std::string(field) + "[" + std::to_string(i) + "]", why);
        else
          dst.push_back(v);
      }
      ++i;
    }
  };

  get_grid("p_grid", cfg.p_grid, [](double v) { return v > 0.0; },
           "orders must be positive");
  get_grid("t_grid", cfg.t_grid, [](double v) { return v > 0.0 && v < 1.0; },
           "weights must lie in (0,1)");
  get_grid("tau_grid", cfg.tau_grid,
           [](double v) { return v > 0.0 && v < 1.0; },
           "transmissivities must lie in (0,1)");

  if (j.contains("alpha_policy")) {
    const auto& a = j.at("alpha_policy");
    if (a.is_string() && a.get<std::string>() == "boundary") {
      cfg.alpha_boundary = true;
    } else if (a.is_object() && a.contains("fixed") &&
               a.at("fixed").is_number()) {
      cfg.alpha_boundary = false;
      cfg.alpha_fixed = a.at("fixed").get<double>();
    } else {
      fail("alpha_policy", "must be \"boundary\" or {\"fixed\": value}");
    }
  }

  if (j.contains("n_grid")) {
    if (!j.at("n_grid").is_array()) {
      fail("n_grid", "must be an array of integers");
    } else {
      size_t i = 0;
      for (const auto& vj : j.at("n_grid")) {
        if (!vj.is_number_integer() || vj.get<long>() < 16)
          fail("n_grid[" + std::to_string(i) + "]", "must be an integer >= 16");
        else
          cfg.n_grid.push_back(vj.get<long>());
        ++i;
      }
    }
  }

  double tmp = 0.0;
  get_num("ensemble_size", tmp, false, [](double v) { return v >= 1.0; },
          "must be >= 1");
  if (tmp > 0.0) cfg.ensemble_size = static_cast<long>(tmp);
  get_num("epsilon", cfg.epsilon, false,
          [](double v) { return v > 0.0 && v <= 0.1; },
          "must lie in (0, 0.1]");
  get_num("tol_rel", cfg.tol_rel, false, [](double v) { return v >= 0.0; },
          "must be non-negative");
  get_num("box_sigmas", cfg.box_sigmas, false,
          [](double v) { return v >= 1.0; }, "must be >= 1");
  get_num("refine_threshold", cfg.refine_threshold, false,
          [](double v) { return v > 0.0; }, "must be positive");
  if (j.contains("refine")) {
    if (j.at("refine").is_boolean())
      cfg.refine = j.at("refine").get<bool>();
    else
      fail("refine", "must be a boolean");
  }
  get_num("young_tol", cfg.young_tol, false, [](double v) { return v > 0.0; },
          "must be positive");
  get_num("temperature_scale", cfg.temperature_scale, false,
          [](double v) { return v >= 0.0; }, "must be non-negative");
  if (j.contains("young_triple")) {
    const auto& yt = j.at("young_triple");
    if (!yt.is_array() || yt.size() != 3) {
      fail("young_triple", "must be [p, q, r]");
    } else {
      for (int i = 0; i < 3; ++i) cfg.young_triple[i] = yt.at(i).get<double>();
      try {
        YoungExponents e{cfg.young_triple[0], cfg.young_triple[1],
                         cfg.young_triple[2]};
        e.validate();
      } catch (const std::exception& e) {
        fail("young_triple", e.what());
      }
    }
  }
  if (j.contains("pinf_mode")) {
    const std::string m = j.at("pinf_mode").get<std::string>();
    if (m != "alpha_one" && m != "alpha_schedule")
      fail("pinf_mode", "must be alpha_one or alpha_schedule");
    else
      cfg.pinf_mode = m;
  }

  // per-kind requirements
  const bool classical = cfg.kind == ExperimentKind::classical_weighted ||
                         cfg.kind == ExperimentKind::classical_unweighted;
  if (classical || cfg.kind == ExperimentKind::shannon_limit ||
      cfg.kind == ExperimentKind::pinf_search) {
    if (cfg.families.empty()) fail("families", "must be non-empty");
  }
  if (classical) {
    if (cfg.p_grid.empty()) fail("p_grid", "must be non-empty");
    for (size_t i = 0; i < cfg.p_grid.size(); ++i)
      if (cfg.p_grid[i] < 1.0)
        fail("p_grid[" + std::to_string(i) + "]",
             "theorem-mode orders require p >= 1");
  }
  if (cfg.kind == ExperimentKind::classical_weighted && cfg.t_grid.empty())
    fail("t_grid", "must be non-empty");
  if (cfg.kind == ExperimentKind::quantum) {
    if (cfg.p_grid.empty()) fail("p_grid", "must be non-empty");
    for (size_t i = 0; i < cfg.p_grid.size(); ++i)
      if (cfg.p_grid[i] <= 1.0)
        fail("p_grid[" + std::to_string(i) + "]",
             "quantum orders require p > 1");
    if (cfg.tau_grid.empty()) fail("tau_grid", "must be non-empty");
  }
  if ((classical || cfg.kind == ExperimentKind::young_equality ||
       cfg.kind == ExperimentKind::shannon_limit) &&
      cfg.n_grid.empty())
    cfg.n_grid = {4096};

  if (!errors.empty()) throw config_error(std::move(errors));
  return cfg;
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = kind_name(kind);
  j["seed"] = seed;
  j["dimension"] = dimension;
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : families) fams.push_back(f.to_json());
  j["families"] = fams;
  j["pair_policy"] = pair_policy;
  j["p_grid"] = p_grid;
  j["t_grid"] = t_grid;
  j["tau_grid"] = tau_grid;
  if (alpha_boundary)
    j["alpha_policy"] = "boundary";
  else
    j["alpha_policy"] = {{"fixed", alpha_fixed}};
  j["n_grid"] = n_grid;
  j["ensemble_size"] = ensemble_size;
  j["epsilon"] = epsilon;
  j["tol_rel"] = tol_rel;
  j["box_sigmas"] = box_sigmas;
  j["refine"] = refine;
  j["refine_threshold"] = refine_threshold;
  j["young_triple"] = young_triple;
  j["young_tol"] = young_tol;
  j["pinf_mode"] = pinf_mode;
  j["temperature_scale"] = temperature_scale;
  return j;
}

int worker_count() {
  if (const char* env = std::getenv("REPI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

namespace {

std::vector<std::pair<size_t, size_t>> family_pairs(const SweepConfig& cfg) {
  std::vector<std::pair<size_t, size_t>> pairs;
  const size_t n = cfg.families.size();
  if (cfg.pair_policy == "zip") {
    for (size_t i = 0; i + 1 < n; i += 2) pairs.emplace_back(i, i + 1);
    if (n == 1) pairs.emplace_back(0, 0);
  } else if (cfg.pair_policy == "ordered") {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) pairs.emplace_back(i, j);
  } else {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

double alpha_for(const SweepConfig& cfg, double p) {
  if (!cfg.alpha_boundary) return cfg.alpha_fixed;
  return p == 1.0 ? 1.0 : 0.5 * (p + 1.0);
}

// bounded ratio for equality-style cells so reports stay finite
double capped_ratio(double num, double den) {
  if (den <= 0.0) return 1e12;
  return std::min(num / den, 1e12);
}

using CellFn = std::function<EpiCheckCell()>;

void build_classical(const SweepConfig& cfg, std::vector<CellFn>& cells) {
  const bool weighted = cfg.kind == ExperimentKind::classical_weighted;
  const auto pairs = family_pairs(cfg);
  std::vector<double> ts;
  if (weighted)
    ts = cfg.t_grid;
  else
    ts = {-1.0};  // placeholder single iteration
  for (const auto& [ix, iy] : pairs)
    for (double p : cfg.p_grid)
      for (double t : ts)
        for (long n : cfg.n_grid) {
          const AnalyticDensity fx = cfg.families[ix];
          const AnalyticDensity fy = cfg.families[iy];
          const double alpha = alpha_for(cfg, p);
          cells.push_back([=, &cfg]() {
            EpiCheckOptions opts;
            opts.n = n;
            opts.tol_rel = cfg.tol_rel;
            opts.refine = cfg.refine;
            opts.refine_threshold = cfg.refine_threshold;
            opts.box_sigmas = cfg.box_sigmas;
            return check_weighted_repi(
                fx, fy, p, alpha,
                weighted ? std::optional<double>(t) : std::nullopt, opts);
          });
        }
}

void build_shannon_limit(const SweepConfig& cfg, std::vector<CellFn>& cells) {
  for (size_t i = 0; i < cfg.families.size(); ++i)
    for (long n : cfg.n_grid) {
      const AnalyticDensity f = cfg.families[i];
      const double eps = cfg.epsilon;
      cells.push_back([=]() {
        const auto tri = shannon_limit_check(f, eps, n);
        const double h1 = tri[1].value;
        const double dev =
            std::max(std::abs(tri[0].value - h1), std::abs(tri[2].value - h1));
        const double band = 2.0 * eps * (1.0 + std::abs(h1));
        const bool monotone = tri[0].value >= h1 - 1e-9 &&
                              h1 >= tri[2].value - 1e-9;
        EpiCheckCell cell;
        cell.experiment = "shannon_limit";
        cell.family_x = f.label();
        cell.family_y = f.label();
        cell.p = 1.0;
        cell.alpha = eps;
        cell.n = n;
        cell.dim = f.dim();
        cell.lhs = tri[0].value;
        cell.rhs = tri[2].value;
        cell.ratio = capped_ratio(band, dev);
        cell.pass = monotone && cell.ratio >= 1.0;
        return cell;
      });
    }
}

void build_young_equality(const SweepConfig& cfg, std::vector<CellFn>& cells) {
  const YoungExponents e{cfg.young_triple[0], cfg.young_triple[1],
                         cfg.young_triple[2]};
  for (long n : cfg.n_grid) {
    cells.push_back([=, &cfg]() {
      // Gaussian extremizer variances for this exponent triple
      const double ap = 1.0 / e.p - 1.0;
      const double vx = (1.0 / e.q - 1.0) / ap;
      const double vy = (1.0 / e.r - 1.0) / ap;
      const AnalyticDensity fx = AnalyticDensity::gaussian(0.0, vx);
      const AnalyticDensity fy = AnalyticDensity::gaussian(0.0, vy);
      const double hint = std::min({e.p, e.q, e.r});
      const GridDensity gx =
          discretize(fx, suggested_grid(fx, n, hint, cfg.box_sigmas));
      const GridDensity gy =
          discretize(fy, suggested_grid(fy, n, hint, cfg.box_sigmas));
      const YoungNormCheck chk = verify_young_norm(gx, gy, e);
      EpiCheckCell cell;
      cell.experiment = "young_equality";
      cell.family_x = fx.label();
      cell.family_y = fy.label();
      cell.p = e.p;
      cell.alpha = 0.0;
      cell.n = n;
      cell.dim = 1;
      cell.lhs = chk.achieved;
      cell.rhs = chk.bound;
      cell.ratio = chk.ratio;
      cell.pass = std::abs(chk.ratio - 1.0) <= cfg.young_tol;
      return cell;
    });
  }
}

void build_lemma_search(const SweepConfig& cfg, std::vector<CellFn>& cells) {
  for (long i = 0; i < cfg.ensemble_size; ++i) {
    const uint64_t seed = cfg.seed;
    cells.push_back([=]() {
      SplitMix64 rng(SplitMix64::mix(seed, static_cast<uint64_t>(i)));
      const double p = 1.0 + 9.0 * rng.uniform01();
      const double split = rng.uniform01();
      const double target = 1.0 - 1.0 / p;
      const double a = split * target;
      const double b = target - a;
      const auto res = solve_exponents(a, b, p);
      EpiCheckCell cell;
      cell.experiment = "lemma_search";
      cell.family_x = "split(a=" + std::to_string(a) + ")";
      cell.family_y = "split(b=" + std::to_string(b) + ")";
      cell.p = p;
      cell.alpha = 0.5 * (p + 1.0);
      cell.n = 0;
      cell.lhs = res.max_value;
      cell.rhs = target;
      cell.ratio = res.max_value / target;
      cell.pass = cell.ratio >= 1.0 - 1e-9;
      return cell;
    });
  }
}

void build_pinf(const SweepConfig& cfg, std::vector<CellFn>& cells) {
  const PinfMode mode = cfg.pinf_mode == "alpha_schedule"
                            ? PinfMode::alpha_schedule
                            : PinfMode::alpha_one;
  const auto pairs = family_pairs(cfg);
  std::vector<double> orders;
  if (mode == PinfMode::alpha_one)
    orders = {std::numeric_limits<double>::infinity()};
  else
    orders = {4.0, 8.0, 16.0, 32.0};
  const long n = cfg.n_grid.empty() ? 4096 : cfg.n_grid.front();
  for (const auto& [ix, iy] : pairs)
    for (double p : orders) {
      const AnalyticDensity fx = cfg.families[ix];
      const AnalyticDensity fy = cfg.families[iy];
      cells.push_back([=, &cfg]() {
        EpiCheckOptions opts;
        opts.n = n;
        opts.exploratory = true;
        opts.refine = false;
        opts.box_sigmas = cfg.box_sigmas;
        const double alpha = std::isinf(p) ? 1.0 : 0.5 * (p + 1.0);
        EpiCheckCell cell =
            check_weighted_repi(fx, fy, p, alpha, std::nullopt, opts);
        cell.experiment = "pinf_search";
        return cell;
      });
    }
}

void build_quantum(const SweepConfig& cfg, std::vector<CellFn>& cells) {
  for (long i = 0; i < cfg.ensemble_size; ++i)
    for (double tau : cfg.tau_grid)
      for (double p : cfg.p_grid) {
        const uint64_t seed = cfg.seed;
        const double kappa = alpha_for(cfg, p);
        const double temp = cfg.temperature_scale;
        cells.push_back([=]() {
          const int modes = 1 + static_cast<int>(i % 2);
          const auto x = random_gaussian_state(
              modes, SplitMix64::mix(seed, 2 * static_cast<uint64_t>(i)), temp);
          const auto y = random_gaussian_state(
              modes, SplitMix64::mix(seed, 2 * static_cast<uint64_t>(i) + 1),
              temp);
          EpiCheckCell cell = check_qrepi(x, y, tau, p, kappa);
          cell.family_x = "random_state(pair=" + std::to_string(i) +
                          ",modes=" + std::to_string(modes) + ")";
          cell.family_y = cell.family_x;
          return cell;
        });
      }
}

}  // namespace

ExperimentReport run_sweep(const SweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();

  std::vector<CellFn> builders;
  switch (cfg.kind) {
    case ExperimentKind::classical_weighted:
    case ExperimentKind::classical_unweighted:
      build_classical(cfg, builders);
      break;
    case ExperimentKind::shannon_limit:
      build_shannon_limit(cfg, builders);
      break;
    case ExperimentKind::young_equality:
      build_young_equality(cfg, builders);
      break;
    case ExperimentKind::lemma_search:
      build_lemma_search(cfg, builders);
      break;
    case ExperimentKind::pinf_search:
      build_pinf(cfg, builders);
      break;
    case ExperimentKind::quantum:
      build_quantum(cfg, builders);
      break;
  }

  std::vector<EpiCheckCell> cells(builders.size());
  std::atomic<size_t> cursor{0};
  auto work = [&]() {
    for (size_t i; (i = cursor.fetch_add(1)) < builders.size();) {
      try {
        cells[i] = builders[i]();
      } catch (const std::exception& e) {
        EpiCheckCell& cell = cells[i];
        cell.error = e.what();
        cell.pass = false;
      }
      cells[i].cell_index = static_cast<long>(i);
    }
  };
  const int workers = worker_count();
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  ExperimentReport report;
  report.config_echo = cfg.to_json();
  report.cells = std::move(cells);
  report.seed = cfg.seed;
  report.timestamp = timestamp_utc();
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report.finalize(wall);
  return report;
}

SweepConfig default_weighted_sweep() {
  SweepConfig cfg;
  cfg.kind = ExperimentKind::classical_weighted;
  cfg.seed = 20240817;
  cfg.families = {
      AnalyticDensity::gaussian(0.0, 1.0),
      AnalyticDensity::uniform(0.0, 1.0),
      AnalyticDensity::laplace(1.0),
      AnalyticDensity::mixture(
          {AnalyticDensity::gaussian(-1.5, 0.6), AnalyticDensity::gaussian(1.2, 1.4)},
          {0.5, 0.5}),
  };
  cfg.p_grid = {1.25, 1.5, 2.0, 3.0, 4.0};
  cfg.t_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  cfg.n_grid = {4096};
  return cfg;
}

SweepConfig default_unweighted_sweep() {
  SweepConfig cfg = default_weighted_sweep();
  cfg.kind = ExperimentKind::classical_unweighted;
  cfg.t_grid.clear();
  return cfg;
}

SweepConfig default_quantum_sweep() {
  SweepConfig cfg;
  cfg.kind = ExperimentKind::quantum;
  cfg.seed = 20240817;
  cfg.ensemble_size = 500;
  cfg.tau_grid = {0.25, 0.5, 0.75};
  cfg.p_grid = {1.5, 2.0, 3.0};
  cfg.temperature_scale = 1.0;
  return cfg;
}

SweepConfig default_pinf_sweep(const std::string& mode) {
  SweepConfig cfg;
  cfg.kind = ExperimentKind::pinf_search;
  cfg.seed = 20240817;
  cfg.pinf_mode = mode;
  cfg.pair_policy = "zip";
  cfg.families = {
      AnalyticDensity::uniform(0.0, 1.0), AnalyticDensity::uniform(0.0, 1.0),
      AnalyticDensity::gaussian(0.0, 1.0), AnalyticDensity::gaussian(0.0, 2.0)};
  cfg.n_grid = {4096};
  return cfg;
}

}  // namespace repi
