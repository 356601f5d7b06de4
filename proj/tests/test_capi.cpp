// Exercises the shared-library surface the way an external binding would:
// JSON in, handles and plain structs out, error codes everywhere.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "repi/repi.h"

namespace {

struct Density {
  repi_density* d = nullptr;
  explicit Density(const char* json) {
    REQUIRE(repi_density_from_json(json, &d) == REPI_OK);
  }
  ~Density() { repi_density_free(d); }
};

struct State {
  repi_state* s = nullptr;
  explicit State(const char* json) {
    REQUIRE(repi_state_from_json(json, &s) == REPI_OK);
  }
  ~State() { repi_state_free(s); }
};

}  // namespace

TEST_CASE("version string") {
  CHECK(std::string(repi_version()).find("repi") != std::string::npos);
}

TEST_CASE("density construction and failure modes") {
  repi_density* d = nullptr;
  CHECK(repi_density_from_json("{\"family\":\"gaussian\"}", &d) == REPI_OK);
  repi_density_free(d);

  d = nullptr;
  CHECK(repi_density_from_json("not json", &d) == REPI_ERR_PARSE);
  CHECK(std::strlen(repi_last_error()) > 0);
  CHECK(repi_density_from_json("{\"family\":\"sinc\"}", &d) ==
        REPI_ERR_INVALID);
  CHECK(repi_density_from_json("{\"family\":\"gaussian\",\"variance\":-1}",
                               &d) == REPI_ERR_INVALID);
  CHECK(repi_density_from_json(nullptr, &d) == REPI_ERR_INVALID);
}

TEST_CASE("entropy values through the C surface") {
  Density g("{\"family\":\"gaussian\",\"mean\":0,\"variance\":1}");
  double h = 0.0;
  CHECK(repi_renyi_entropy(g.d, 2.0, 0, 0, &h) == REPI_OK);
  CHECK(h == doctest::Approx(1.26551).epsilon(1e-5));
  double h_grid = 0.0;
  CHECK(repi_renyi_entropy(g.d, 2.0, 1, 8192, &h_grid) == REPI_OK);
  CHECK(h_grid == doctest::Approx(h).epsilon(1e-6));

  double v = 0.0;
  CHECK(repi_entropy_power(g.d, 1.0, 0, 0, &v) == REPI_OK);
  CHECK(v == doctest::Approx(2.0 * 3.14159265358979 * std::exp(1.0))
                 .epsilon(1e-9));

  // sup order through the C boundary uses the IEEE infinity
  CHECK(repi_renyi_entropy(g.d, INFINITY, 0, 0, &h) == REPI_OK);
  CHECK(h == doctest::Approx(0.5 * std::log(2.0 * 3.14159265358979)).epsilon(1e-9));

  CHECK(repi_renyi_entropy(g.d, -1.0, 0, 0, &h) == REPI_ERR_INVALID);
  Density mix(
      "{\"family\":\"mixture\",\"weights\":[0.5,0.5],\"components\":"
      "[{\"family\":\"gaussian\",\"mean\":-1},{\"family\":\"gaussian\","
      "\"mean\":1}]}");
  CHECK(repi_renyi_entropy(mix.d, 2.0, 2, 0, &h) == REPI_ERR_INVALID);
  CHECK(repi_renyi_entropy(mix.d, 2.0, 0, 4096, &h) == REPI_OK);
}

TEST_CASE("convolution handles and stats") {
  Density x("{\"family\":\"gaussian\",\"variance\":1}");
  Density y("{\"family\":\"gaussian\",\"variance\":2}");
  repi_density* h = nullptr;
  REQUIRE(repi_convolve(x.d, y.d, -1.0, 4096, &h) == REPI_OK);
  repi_density_stats stats{};
  CHECK(repi_density_stats_get(h, 0, &stats) == REPI_OK);
  CHECK(stats.mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(stats.variance == doctest::Approx(3.0).epsilon(1e-5));
  repi_density_free(h);

  h = nullptr;
  REQUIRE(repi_convolve(x.d, y.d, 0.25, 4096, &h) == REPI_OK);
  CHECK(repi_density_stats_get(h, 0, &stats) == REPI_OK);
  CHECK(stats.variance == doctest::Approx(0.25 + 0.75 * 2.0).epsilon(1e-5));
  repi_density_free(h);
}

TEST_CASE("exponent utilities") {
  double c = 0.0;
  CHECK(repi_young_constant(2.0, 4.0 / 3.0, 4.0 / 3.0, &c) == REPI_OK);
  CHECK(c == doctest::Approx(std::pow(4.0 / 3.0, 1.5) / 2.0).epsilon(1e-12));
  CHECK(repi_young_constant(2.0, 2.0, 2.0, &c) == REPI_ERR_INVALID);

  double max_f = 0.0, q = 0.0, r = 0.0;
  CHECK(repi_lemma_search(0.25, 0.25, 2.0, &max_f, &q, &r) == REPI_OK);
  CHECK(max_f >= 0.5);
  CHECK(repi_lemma_search(0.3, 0.3, 2.0, &max_f, &q, &r) == REPI_ERR_INVALID);
}

TEST_CASE("inequality cell through the C surface") {
  Density g("{\"family\":\"gaussian\",\"variance\":1}");
  repi_cell cell{};
  CHECK(repi_epi_check(g.d, g.d, 2.0, 1.5, 0.5, 4096, 0, &cell) == REPI_OK);
  CHECK(cell.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
  CHECK(cell.pass == 1);
  CHECK(repi_epi_check(g.d, g.d, 2.0, 1.0, 0.5, 4096, 0, &cell) ==
        REPI_ERR_INVALID);
}

TEST_CASE("states and the bosonic inequality") {
  State vac("{\"kind\":\"vacuum\",\"modes\":1}");
  State th("{\"kind\":\"thermal\",\"nu\":3}");
  double nus[4];
  int n = 0;
  CHECK(repi_state_symplectic_spectrum(th.s, nus, 4, &n) == REPI_OK);
  CHECK(n == 1);
  CHECK(nus[0] == doctest::Approx(3.0));

  double h = 0.0;
  CHECK(repi_quantum_entropy(th.s, 2.0, &h) == REPI_OK);
  CHECK(h == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(repi_quantum_entropy(th.s, 0.9, &h) == REPI_ERR_INVALID);

  repi_cell cell{};
  CHECK(repi_qrepi_check(vac.s, vac.s, 0.5, 2.0, 1.5, &cell) == REPI_OK);
  CHECK(cell.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  State rnd("{\"kind\":\"random\",\"modes\":2,\"seed\":9,\"temperature\":1.0}");
  CHECK(repi_state_symplectic_spectrum(rnd.s, nus, 4, &n) == REPI_OK);
  CHECK(n == 2);
  CHECK(nus[0] >= 1.0 - 1e-9);

  repi_state* bad = nullptr;
  CHECK(repi_state_from_json("{\"kind\":\"thermal\",\"nu\":0.2}", &bad) ==
        REPI_ERR_INVALID);
}

TEST_CASE("thermo check through the C surface") {
  double t0 = 0.0, direct = 0.0, free_form = 0.0;
  CHECK(repi_thermo_check(2.0, 257, 4.0, &t0, &direct, &free_form) == REPI_OK);
  CHECK(t0 == doctest::Approx(1.0 / (2.0 * 3.14159265358979)).epsilon(1e-9));
  CHECK(std::abs(direct - free_form) < 1e-4);
}

TEST_CASE("sweep, report emission and summary") {
  const char* cfg = R"({
    "experiment": "classical_weighted",
    "seed": 7,
    "families": [{"family":"gaussian","variance":1}],
    "p_grid": [2.0],
    "t_grid": [0.5],
    "n_grid": [1024]
  })";
  repi_report* report = nullptr;
  REQUIRE(repi_sweep_run(cfg, &report) == REPI_OK);
  repi_summary summary{};
  CHECK(repi_report_stats(report, &summary) == REPI_OK);
  CHECK(summary.cell_count == 1);
  CHECK(summary.violation_count == 0);

  char* json = nullptr;
  CHECK(repi_report_emit(report, 0, 1, &json) == REPI_OK);
  CHECK(std::string(json).find("\"cells\"") != std::string::npos);
  repi_string_free(json);

  char* csv = nullptr;
  CHECK(repi_report_emit(report, 1, 0, &csv) == REPI_OK);
  CHECK(std::string(csv).rfind("experiment,", 0) == 0);
  repi_string_free(csv);
  repi_report_free(report);

  // config errors surface as parse failures with the field paths intact
  CHECK(repi_sweep_run("{\"experiment\":\"classical_weighted\"}", &report) ==
        REPI_ERR_PARSE);
  CHECK(std::string(repi_last_error()).find("families") != std::string::npos);
}

TEST_CASE("default configurations round-trip through the sweep runner") {
  char* cfg = nullptr;
  REQUIRE(repi_default_config(3, &cfg) == REPI_OK);
  repi_report* report = nullptr;
  REQUIRE(repi_sweep_run(cfg, &report) == REPI_OK);
  repi_summary summary{};
  CHECK(repi_report_stats(report, &summary) == REPI_OK);
  CHECK(summary.violation_count == 0);
  CHECK(summary.min_ratio == doctest::Approx(0.5).epsilon(2e-2));
  repi_report_free(report);
  repi_string_free(cfg);
  CHECK(repi_default_config(99, &cfg) == REPI_ERR_INVALID);
}
