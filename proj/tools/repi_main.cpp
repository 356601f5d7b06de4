// Command-line front end for the repi shared library. Reports go to stdout,
// progress and diagnostics to stderr. Exit codes: 0 success with no
// violations, 1 at least one violation cell, 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "repi/repi.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitUsage);
}

void require_ok(repi_status rc, const std::string& context) {
  if (rc != REPI_OK) die(context + ": " + repi_last_error());
}

struct FamilyFlags {
  std::string family = "gaussian";
  double mean = 0.0;
  double sigma = 1.0;
  double variance = -1.0;
  double rate = 1.0;
  double scale = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  std::string json;  // raw family spec wins when given

  std::string to_json() const {
    if (!json.empty()) return json;
    std::ostringstream out;
    out.precision(17);
    if (family == "gaussian") {
      const double var = variance > 0.0 ? variance : sigma * sigma;
      out << "{\"family\":\"gaussian\",\"mean\":" << mean
          << ",\"variance\":" << var << "}";
    } else if (family == "uniform") {
      out << "{\"family\":\"uniform\",\"lo\":" << lo << ",\"hi\":" << hi << "}";
    } else if (family == "exponential") {
      out << "{\"family\":\"exponential\",\"rate\":" << rate << "}";
    } else if (family == "laplace") {
      out << "{\"family\":\"laplace\",\"scale\":" << scale
          << ",\"loc\":" << mean << "}";
    } else if (family == "cauchy") {
      out << "{\"family\":\"cauchy\",\"scale\":" << scale << "}";
    } else {
      die("unknown family '" + family + "'");
    }
    return out.str();
  }
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f, const std::string& prefix) {
  const std::string dash = prefix.empty() ? "--" : "--" + prefix + "-";
  cmd->add_option(dash + "family", f.family,
                  "family: gaussian|uniform|exponential|laplace|cauchy");
  cmd->add_option(dash + "mean", f.mean, "mean / location");
  cmd->add_option(dash + "sigma", f.sigma, "gaussian standard deviation");
  cmd->add_option(dash + "variance", f.variance, "gaussian variance");
  cmd->add_option(dash + "rate", f.rate, "exponential rate");
  cmd->add_option(dash + "scale", f.scale, "laplace/cauchy scale");
  cmd->add_option(dash + "lo", f.lo, "uniform lower edge");
  cmd->add_option(dash + "hi", f.hi, "uniform upper edge");
  cmd->add_option(dash + "spec", f.json, "raw family spec JSON");
}

struct DensityHandle {
  repi_density* d = nullptr;
  ~DensityHandle() { repi_density_free(d); }
};

struct StateHandle {
  repi_state* s = nullptr;
  ~StateHandle() { repi_state_free(s); }
};

struct ReportHandle {
  repi_report* r = nullptr;
  ~ReportHandle() { repi_report_free(r); }
};

void make_density(const FamilyFlags& f, DensityHandle& out) {
  require_ok(repi_density_from_json(f.to_json().c_str(), &out.d),
             "building density");
}

// runs a sweep, writes requested outputs, returns the process exit code
int run_and_emit(const std::string& config_json, const std::string& json_path,
                 const std::string& csv_path, bool canonical, bool quiet) {
  ReportHandle report;
  require_ok(repi_sweep_run(config_json.c_str(), &report.r), "sweep");
  repi_summary summary{};
  require_ok(repi_report_stats(report.r, &summary), "summary");

  auto emit = [&](int format, const std::string& path) {
    char* text = nullptr;
    require_ok(repi_report_emit(report.r, format, canonical ? 1 : 0, &text),
               "emit");
    if (path == "-") {
      std::cout << text;
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out) die("cannot write " + path);
      out << text;
    }
    repi_string_free(text);
  };
  if (!json_path.empty()) emit(0, json_path);
  if (!csv_path.empty()) emit(1, csv_path);

  if (!quiet)
    std::cerr << "cells=" << summary.cell_count
              << " violations=" << summary.violation_count
              << " min_ratio=" << summary.min_ratio
              << " wall=" << summary.wall_seconds << "s\n";
  return summary.violation_count == 0 ? kExitOk : kExitViolation;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy power inequality laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(repi_version()));

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "Renyi entropy of a family");
  FamilyFlags ent_family;
  add_family_flags(entropy_cmd, ent_family, "");
  double ent_p = 1.0;
  bool ent_grid = false;
  long ent_n = 8192;
  bool ent_power = false;
  entropy_cmd->add_option("--p", ent_p, "entropy order (inf accepted)");
  entropy_cmd->add_flag("--grid", ent_grid, "force grid evaluation");
  entropy_cmd->add_option("--n", ent_n, "grid nodes per axis");
  entropy_cmd->add_flag("--power", ent_power, "print the entropy power instead");

  // convolve
  auto* conv_cmd = app.add_subcommand("convolve", "density of X+Y (or weighted)");
  FamilyFlags conv_x, conv_y;
  add_family_flags(conv_cmd, conv_x, "x");
  add_family_flags(conv_cmd, conv_y, "y");
  double conv_t = -1.0;
  long conv_n = 4096;
  conv_cmd->add_option("--t", conv_t, "weight t in [0,1]; omit for plain sum");
  conv_cmd->add_option("--n", conv_n, "grid nodes per axis");

  // verify-epi
  auto* epi_cmd = app.add_subcommand("verify-epi",
                                     "classical entropy power inequality sweep");
  bool epi_unweighted = false;
  std::string epi_json, epi_csv = "-";
  bool epi_canonical = false;
  uint64_t epi_seed = 0;
  epi_cmd->add_flag("--unweighted", epi_unweighted, "plain convolution mode");
  epi_cmd->add_option("--json", epi_json, "write JSON report to path ('-' stdout)");
  epi_cmd->add_option("--csv", epi_csv, "write CSV report to path ('-' stdout)");
  epi_cmd->add_flag("--canonical", epi_canonical, "byte-comparable output");
  epi_cmd->add_option("--seed", epi_seed, "override the sweep seed");

  // verify-qepi
  auto* qepi_cmd = app.add_subcommand("verify-qepi",
                                      "bosonic Gaussian inequality sweep");
  std::string qepi_json, qepi_csv = "-";
  bool qepi_canonical = false;
  long qepi_pairs = 0;
  uint64_t qepi_seed = 0;
  qepi_cmd->add_option("--json", qepi_json, "write JSON report to path");
  qepi_cmd->add_option("--csv", qepi_csv, "write CSV report to path");
  qepi_cmd->add_flag("--canonical", qepi_canonical, "byte-comparable output");
  qepi_cmd->add_option("--pairs", qepi_pairs, "random state pairs");
  qepi_cmd->add_option("--seed", qepi_seed, "override the sweep seed");

  // young-constant
  auto* young_cmd = app.add_subcommand("young-constant",
                                       "optimal convolution constant C(p,q,r)");
  double yc_p = 2.0, yc_q = 4.0 / 3.0, yc_r = 4.0 / 3.0;
  young_cmd->add_option("--p", yc_p, "p exponent")->required();
  young_cmd->add_option("--q", yc_q, "q exponent")->required();
  young_cmd->add_option("--r", yc_r, "r exponent")->required();

  // lemma-search
  auto* lemma_cmd = app.add_subcommand(
      "lemma-search", "exponent search certifying the scalar bound");
  double lm_a = 0.25, lm_b = 0.25, lm_p = 2.0;
  lemma_cmd->add_option("--a", lm_a, "first split value")->required();
  lemma_cmd->add_option("--b", lm_b, "second split value")->required();
  lemma_cmd->add_option("--p", lm_p, "order p > 1")->required();

  // pinf-search
  auto* pinf_cmd = app.add_subcommand(
      "pinf-search", "sup-order probes of the unweighted inequality");
  std::string pinf_mode = "alpha_one";
  std::string pinf_json, pinf_csv = "-";
  pinf_cmd->add_option("--mode", pinf_mode, "alpha_one | alpha_schedule");
  pinf_cmd->add_option("--json", pinf_json, "write JSON report to path");
  pinf_cmd->add_option("--csv", pinf_csv, "write CSV report to path");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep from a config file");
  std::string sweep_config;
  std::string sweep_json, sweep_csv;
  bool sweep_canonical = false;
  sweep_cmd->add_option("--config", sweep_config, "config JSON path")->required();
  sweep_cmd->add_option("--json", sweep_json, "write JSON report to path");
  sweep_cmd->add_option("--csv", sweep_csv, "write CSV report to path");
  sweep_cmd->add_flag("--canonical", sweep_canonical, "byte-comparable output");

  // thermo-check
  auto* thermo_cmd = app.add_subcommand(
      "thermo-check", "free-energy route to the entropy of order T0/T");
  double th_ratio = 2.0;
  long th_n = 257;
  double th_box = 4.0;
  thermo_cmd->add_option("--t-ratio", th_ratio, "temperature as a multiple of T0");
  thermo_cmd->add_option("--n", th_n, "phase-grid nodes per axis");
  thermo_cmd->add_option("--box", th_box, "phase-grid half-width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;  // --help/--version
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  if (*entropy_cmd) {
    DensityHandle d;
    make_density(ent_family, d);
    const double p = ent_p;
    double value = 0.0;
    if (ent_power)
      require_ok(repi_entropy_power(d.d, p, ent_grid ? 1 : 0, ent_n, &value),
                 "entropy power");
    else
      require_ok(repi_renyi_entropy(d.d, p, ent_grid ? 1 : 0, ent_n, &value),
                 "entropy");
    std::printf("%.6g\n", value);
    return kExitOk;
  }

  if (*conv_cmd) {
    DensityHandle x, y, h;
    make_density(conv_x, x);
    make_density(conv_y, y);
    require_ok(repi_convolve(x.d, y.d, conv_t, conv_n, &h.d), "convolve");
    repi_density_stats stats{};
    require_ok(repi_density_stats_get(h.d, 0, &stats), "stats");
    std::printf("mass %.12g\nmean %.12g\nvariance %.12g\nsup %.12g\n"
                "mass_defect %.3g\ntruncated %d\n",
                stats.mass, stats.mean, stats.variance, stats.sup,
                stats.mass_defect, stats.truncated);
    return kExitOk;
  }

  if (*epi_cmd) {
    char* cfg = nullptr;
    require_ok(repi_default_config(epi_unweighted ? 1 : 0, &cfg), "config");
    std::string config(cfg);
    repi_string_free(cfg);
    if (epi_seed != 0) {
      // a seed override keeps everything else at the defaults
      const auto pos = config.find("\"seed\":");
      if (pos != std::string::npos) {
        const auto end = config.find_first_of(",}", pos);
        config.replace(pos, end - pos,
                       "\"seed\": " + std::to_string(epi_seed));
      }
    }
    return run_and_emit(config, epi_json, epi_csv, epi_canonical, false);
  }

  if (*qepi_cmd) {
    char* cfg = nullptr;
    require_ok(repi_default_config(2, &cfg), "config");
    std::string config(cfg);
    repi_string_free(cfg);
    if (qepi_pairs > 0) {
      const auto pos = config.find("\"ensemble_size\":");
      const auto end = config.find_first_of(",}", pos);
      config.replace(pos, end - pos,
                     "\"ensemble_size\": " + std::to_string(qepi_pairs));
    }
    if (qepi_seed != 0) {
      const auto pos = config.find("\"seed\":");
      const auto end = config.find_first_of(",}", pos);
      config.replace(pos, end - pos, "\"seed\": " + std::to_string(qepi_seed));
    }
    return run_and_emit(config, qepi_json, qepi_csv, qepi_canonical, false);
  }

  if (*young_cmd) {
    double c = 0.0;
    require_ok(repi_young_constant(yc_p, yc_q, yc_r, &c), "young constant");
    std::printf("%.12g\n", c);
    return kExitOk;
  }

  if (*lemma_cmd) {
    double max_f = 0.0, q = 0.0, r = 0.0;
    require_ok(repi_lemma_search(lm_a, lm_b, lm_p, &max_f, &q, &r),
               "lemma search");
    const double target = 1.0 - 1.0 / lm_p;
    std::printf("max %.12g\nq %.12g\nr %.12g\nbound %.12g\ncertified %s\n",
                max_f, q, r, target, max_f >= target * (1.0 - 1e-9) ? "yes" : "no");
    return max_f >= target * (1.0 - 1e-9) ? kExitOk : kExitViolation;
  }

  if (*pinf_cmd) {
    if (pinf_mode != "alpha_one" && pinf_mode != "alpha_schedule")
      die("--mode must be alpha_one or alpha_schedule");
    char* cfg = nullptr;
    require_ok(repi_default_config(pinf_mode == "alpha_one" ? 3 : 4, &cfg),
               "config");
    std::string config(cfg);
    repi_string_free(cfg);
    return run_and_emit(config, pinf_json, pinf_csv, false, false);
  }

  if (*sweep_cmd) {
    const std::string config = read_file(sweep_config);
    if (sweep_json.empty() && sweep_csv.empty()) sweep_json = "-";
    return run_and_emit(config, sweep_json, sweep_csv, sweep_canonical, false);
  }

  if (*thermo_cmd) {
    double t0 = 0.0, direct = 0.0, free_form = 0.0;
    require_ok(repi_thermo_check(th_ratio, th_n, th_box, &t0, &direct,
                                 &free_form),
               "thermo check");
    std::printf("kT0 %.12g\nentropy_direct %.12g\nentropy_free_energy %.12g\n"
                "difference %.3g\n",
                t0, direct, free_form, std::abs(direct - free_form));
    return std::abs(direct - free_form) <= 1e-4 ? kExitOk : kExitViolation;
  }

  return kExitUsage;
}
