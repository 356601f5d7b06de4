#include "repi/repi.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "core/errors.hpp"
#include "core/quantum.hpp"
#include "core/renyi.hpp"
#include "core/sweep.hpp"
#include "core/thermo.hpp"
#include "core/version.hpp"
#include "core/young.hpp"

namespace {

thread_local std::string g_last_error;

repi_status fail(repi_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
repi_status guarded(Fn&& fn) {
  try {
    fn();
    return REPI_OK;
  } catch (const repi::config_error& e) {
    return fail(REPI_ERR_PARSE, e.what());
  } catch (const repi::budget_error& e) {
    return fail(REPI_ERR_BUDGET, e.what());
  } catch (const repi::numeric_error& e) {
    return fail(REPI_ERR_NUMERIC, e.what());
  } catch (const repi::invalid_input& e) {
    return fail(REPI_ERR_INVALID, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(REPI_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(REPI_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

repi::RenyiOrder order_of(double p) {
  return std::isinf(p) ? repi::RenyiOrder::infinity()
                       : repi::RenyiOrder::of(p);
}

void fill_cell(const repi::EpiCheckCell& src, repi_cell* dst) {
  dst->p = src.p;
  dst->alpha = src.alpha;
  dst->t = src.t ? *src.t : -1.0;
  dst->lhs = src.lhs;
  dst->rhs = src.rhs;
  dst->ratio = src.ratio;
  dst->refinement = src.refinement_estimate;
  dst->pass = src.pass ? 1 : 0;
}

}  // namespace

// Handles wrap the core value types; a density handle carries the analytic
// family or a realized grid, whichever the caller built.
struct repi_density {
  std::optional<repi::AnalyticDensity> analytic;
  std::optional<repi::GridDensity> grid;

  repi::GridDensity realized(long n, double order_hint = 1.0) const {
    if (grid) return *grid;
    const long nodes = n > 0 ? n : 4096;
    return repi::discretize(*analytic,
                            repi::suggested_grid(*analytic, nodes, order_hint));
  }
};

struct repi_state {
  repi::GaussianQuantumState state;
};

struct repi_report {
  repi::ExperimentReport report;
};

extern "C" {

const char* repi_version(void) { return repi::kToolVersion; }

const char* repi_last_error(void) { return g_last_error.c_str(); }

void repi_string_free(char* s) { std::free(s); }

repi_status repi_density_from_json(const char* family_json,
                                   repi_density** out) {
  if (!family_json || !out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto j = nlohmann::json::parse(family_json);
    auto* d = new repi_density;
    d->analytic = repi::AnalyticDensity::from_json(j);
    *out = d;
  });
}

void repi_density_free(repi_density* d) { delete d; }

repi_status repi_density_stats_get(const repi_density* d, long n,
                                   repi_density_stats* out) {
  if (!d || !out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const repi::GridDensity g = d->realized(n);
    out->mass = g.mass();
    out->mean = g.mean()[0];
    out->variance = g.covariance()[0];
    out->sup = g.max_value();
    out->mass_defect = g.mass_defect();
    out->truncated = g.truncated() ? 1 : 0;
  });
}

repi_status repi_renyi_entropy(const repi_density* d, double p, int mode,
                               long n, double* out_nats) {
  if (!d || !out_nats) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const repi::RenyiOrder order = order_of(p);
    if (d->grid) {
      *out_nats = repi::renyi_entropy(*d->grid, order).value;
      return;
    }
    const repi::AnalyticDensity& a = *d->analytic;
    if (mode == 2) {
      if (!a.has_closed_form(order))
        throw repi::invalid_input("no closed form for this family/order");
      *out_nats = a.closed_entropy(order);
    } else if (mode == 1) {
      const double hint = order.is_infinite() ? 1.5 : order.p;
      const repi::GridDensity g = repi::discretize(
          a, repi::suggested_grid(a, n > 0 ? n : 8192, hint));
      *out_nats = repi::renyi_entropy(g, order).value;
    } else {
      *out_nats = repi::renyi_entropy(a, order, n > 0 ? n : 8192).value;
    }
  });
}

repi_status repi_entropy_power(const repi_density* d, double p, int mode,
                               long n, double* out) {
  if (!d || !out) return fail(REPI_ERR_INVALID, "null argument");
  double h = 0.0;
  const repi_status rc = repi_renyi_entropy(d, p, mode, n, &h);
  if (rc != REPI_OK) return rc;
  return guarded([&] {
    const int dim = d->grid ? d->grid->dim() : d->analytic->dim();
    *out = repi::entropy_power_from(h, dim);
  });
}

repi_status repi_convolve(const repi_density* x, const repi_density* y,
                          double t, long n, repi_density** out) {
  if (!x || !y || !out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    repi::GridDensity gx = x->realized(n);
    repi::GridDensity gy = y->realized(n);
    repi::GridDensity h =
        t < 0.0 ? [&] {
          if (!gx.spec().same_spacing(gy.spec())) {
            // plain convolution needs a shared spacing
            repi::GridSpec tgt = gy.spec();
            tgt.delta[0] = gx.spec().delta[0];
            tgt.count[0] =
                static_cast<long>(std::ceil(gy.spec().span(0) / tgt.delta[0])) + 1;
            if (gx.spec().delta[0] > gy.spec().delta[0]) {
              tgt = gx.spec();
              tgt.delta[0] = gy.spec().delta[0];
              tgt.count[0] = static_cast<long>(
                                 std::ceil(gx.spec().span(0) / tgt.delta[0])) +
                             1;
              gx = repi::resample(gx, tgt);
            } else {
              gy = repi::resample(gy, tgt);
            }
          }
          return repi::convolve(gx, gy);
        }()
                : repi::weighted_combine(gx, gy,
                                         repi::WeightParameter{t, true});
    auto* d = new repi_density;
    d->grid = std::move(h);
    *out = d;
  });
}

repi_status repi_young_constant(double p, double q, double r, double* out) {
  if (!out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = repi::sharp_young_constant(repi::YoungExponents{p, q, r});
  });
}

repi_status repi_lemma_search(double a, double b, double p, double* out_max,
                              double* out_q, double* out_r) {
  if (!out_max || !out_q || !out_r)
    return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto res = repi::solve_exponents(a, b, p);
    *out_max = res.max_value;
    *out_q = res.exponents.q;
    *out_r = res.exponents.r;
  });
}

repi_status repi_epi_check(const repi_density* x, const repi_density* y,
                           double p, double alpha, double t, long n,
                           int refine, repi_cell* out) {
  if (!x || !y || !out) return fail(REPI_ERR_INVALID, "null argument");
  if (!x->analytic || !y->analytic)
    return fail(REPI_ERR_INVALID,
                "inequality checks need analytic family inputs");
  return guarded([&] {
    repi::EpiCheckOptions opts;
    opts.n = n > 0 ? n : 4096;
    opts.refine = refine != 0;
    const repi::EpiCheckCell cell = repi::check_weighted_repi(
        *x->analytic, *y->analytic, p, alpha,
        t < 0.0 ? std::nullopt : std::optional<double>(t), opts);
    fill_cell(cell, out);
  });
}

repi_status repi_state_from_json(const char* state_json, repi_state** out) {
  if (!state_json || !out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto j = nlohmann::json::parse(state_json);
    const std::string kind = j.at("kind").get<std::string>();
    const int modes = j.contains("modes") ? j.at("modes").get<int>() : 1;
    if (kind == "vacuum") {
      *out = new repi_state{repi::GaussianQuantumState::vacuum(modes)};
    } else if (kind == "thermal") {
      *out = new repi_state{repi::GaussianQuantumState::thermal(
          j.at("nu").get<double>(), modes)};
    } else if (kind == "squeezed") {
      *out = new repi_state{
          repi::GaussianQuantumState::squeezed_vacuum(j.at("r").get<double>())};
    } else if (kind == "random") {
      *out = new repi_state{repi::random_gaussian_state(
          modes, j.at("seed").get<uint64_t>(),
          j.contains("temperature") ? j.at("temperature").get<double>() : 1.0)};
    } else if (kind == "explicit") {
      const auto mean_v = j.at("mean").get<std::vector<double>>();
      const auto cov_v = j.at("cov");
      const int dim = static_cast<int>(mean_v.size());
      Eigen::VectorXd mean(dim);
      for (int i = 0; i < dim; ++i) mean(i) = mean_v[i];
      Eigen::MatrixXd cov(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
          cov(i, k) = cov_v.at(i).at(k).get<double>();
      *out = new repi_state{
          repi::GaussianQuantumState(std::move(mean), std::move(cov))};
    } else {
      throw repi::invalid_input("unknown state kind: " + kind);
    }
  });
}

void repi_state_free(repi_state* s) { delete s; }

repi_status repi_state_symplectic_spectrum(const repi_state* s, double* buf,
                                           int capacity, int* count) {
  if (!s || !buf || !count) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto nus = repi::symplectic_eigenvalues(s->state.covariance());
    if (static_cast<int>(nus.size()) > capacity)
      throw repi::invalid_input("spectrum buffer too small");
    for (size_t i = 0; i < nus.size(); ++i) buf[i] = nus[i];
    *count = static_cast<int>(nus.size());
  });
}

repi_status repi_quantum_entropy(const repi_state* s, double p, double* out) {
  if (!s || !out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] { *out = repi::quantum_renyi_entropy(s->state, p); });
}

repi_status repi_qrepi_check(const repi_state* x, const repi_state* y,
                             double tau, double p, double kappa,
                             repi_cell* out) {
  if (!x || !y || !out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    fill_cell(repi::check_qrepi(x->state, y->state, tau, p, kappa), out);
  });
}

repi_status repi_thermo_check(double t_over_t0, long n, double box_halfwidth,
                              double* out_t0, double* out_entropy,
                              double* out_free_energy_form) {
  if (!out_t0 || !out_entropy || !out_free_energy_form)
    return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const long nodes = n > 0 ? n : 257;
    const double half = box_halfwidth > 0.0 ? box_halfwidth : 4.0;
    const repi::GridSpec grid =
        repi::GridSpec::nodes_2d(-half, half, nodes, -half, half, nodes);
    auto harmonic = [](double q, double p2) { return 0.5 * (q * q + p2 * p2); };
    // locate T0 first; the caller hands in T as a multiple of it
    const double t0 = repi::solve_unit_partition_temperature(harmonic, grid);
    const repi::ThermoCheck res =
        repi::thermo_renyi_check(harmonic, grid, t_over_t0 * t0);
    *out_t0 = res.t0;
    *out_entropy = res.entropy_direct;
    *out_free_energy_form = res.entropy_free_energy;
  });
}

repi_status repi_sweep_run(const char* config_json, repi_report** out) {
  if (!config_json || !out) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto j = nlohmann::json::parse(config_json);
    const repi::SweepConfig cfg = repi::SweepConfig::from_json(j);
    *out = new repi_report{repi::run_sweep(cfg)};
  });
}

void repi_report_free(repi_report* r) { delete r; }

repi_status repi_report_stats(const repi_report* r, repi_summary* out) {
  if (!r || !out) return fail(REPI_ERR_INVALID, "null argument");
  const auto& s = r->report.summary;
  out->cell_count = s.cell_count;
  out->violation_count = s.violation_count;
  out->min_ratio = s.min_ratio;
  out->max_refinement = s.max_refinement_estimate;
  out->wall_seconds = s.wall_time_seconds;
  return REPI_OK;
}

repi_status repi_report_emit(const repi_report* r, int format, int canonical,
                             char** out_text) {
  if (!r || !out_text) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    const std::string text = format == 1
                                 ? repi::emit_csv(r->report)
                                 : repi::emit_json(r->report, canonical != 0);
    *out_text = dup_string(text);
  });
}

repi_status repi_default_config(int kind, char** out_json) {
  if (!out_json) return fail(REPI_ERR_INVALID, "null argument");
  return guarded([&] {
    repi::SweepConfig cfg;
    switch (kind) {
      case 0: cfg = repi::default_weighted_sweep(); break;
      case 1: cfg = repi::default_unweighted_sweep(); break;
      case 2: cfg = repi::default_quantum_sweep(); break;
      case 3: cfg = repi::default_pinf_sweep("alpha_one"); break;
      case 4: cfg = repi::default_pinf_sweep("alpha_schedule"); break;
      default: throw repi::invalid_input("unknown default config kind");
    }
    *out_json = dup_string(cfg.to_json().dump(2));
  });
}

}  // extern "C"
