#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "core/families.hpp"
#include "core/grid.hpp"
#include "support/oracles.hpp"

using repi::AnalyticDensity;
using repi::discretize;
using repi::GridDensity;
using repi::GridSpec;
using repi::scale_density;
using repi::suggested_grid;

TEST_CASE("uniform on a wider box keeps exact mass") {
  // support edges land on nodes of the 1024-cell lattice over [-0.5, 1.5]
  const auto spec = GridSpec::cells_1d(-0.5, 1.5, 1024);
  const auto g = discretize(AnalyticDensity::uniform(0.0, 1.0), spec);
  CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.mass_defect() < 1e-9);
  CHECK_FALSE(g.truncated());
}

TEST_CASE("gaussian on [-8,8] has negligible defect") {
  const auto spec = GridSpec::nodes_1d(-8.0, 8.0, 4096);
  const auto g = discretize(AnalyticDensity::gaussian(0.0, 1.0), spec);
  CHECK(g.mass_defect() < 1e-8);
  CHECK_FALSE(g.truncated());
  // tail beyond 8 sigma really is below that threshold
  CHECK(2.0 * oracle::gaussian_tail(8.0) < 1e-8);
}

TEST_CASE("cauchy is truncated and renormalized") {
  const auto fam = AnalyticDensity::cauchy(1.0);  // box [-20, 20]
  const auto g = discretize(fam, suggested_grid(fam, 8192));
  CHECK(g.truncated());
  CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-12));
  const double expected_tail = oracle::cauchy_tail_outside(20.0, 1.0);
  CHECK(expected_tail == doctest::Approx(0.03183).epsilon(1e-3));
  CHECK(g.mass_defect() == doctest::Approx(expected_tail).epsilon(1e-3));
}

TEST_CASE("scale by 1 is the identity") {
  const auto fam = AnalyticDensity::laplace(1.0);
  const auto g = discretize(fam, suggested_grid(fam, 2048));
  const auto s = scale_density(g, 1.0);
  REQUIRE(s.values().size() == g.values().size());
  for (size_t i = 0; i < g.values().size(); ++i)
    CHECK(s.values()[i] == g.values()[i]);
  CHECK(s.spec().origin[0] == doctest::Approx(g.spec().origin[0]));
}

TEST_CASE("scaling a unit gaussian by 2 gives the variance-2 gaussian") {
  const auto fam = AnalyticDensity::gaussian(0.0, 1.0);
  const auto g = scale_density(discretize(fam, suggested_grid(fam, 4096)), 2.0);
  double worst = 0.0;
  for (long i = 0; i < g.spec().count[0]; ++i) {
    const double x = g.spec().node(0, i);
    worst = std::max(worst,
                     std::abs(g.values()[i] - oracle::gaussian_pdf(x, 0.0, 2.0)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("scaling preserves unit mass for any factor") {
  const auto fam = AnalyticDensity::laplace(0.7);
  const auto g = discretize(fam, suggested_grid(fam, 2048));
  for (double s : {0.25, 0.5, 2.0, 4.0, 9.0})
    CHECK(scale_density(g, s).mass() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("moments: uniform, gaussian, symmetric mixture") {
  const auto u = discretize(AnalyticDensity::uniform(0.0, 1.0),
                            GridSpec::nodes_1d(0.0, 1.0, 2048));
  CHECK(u.mean()[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(u.covariance()[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-6));

  const auto gf = AnalyticDensity::gaussian(0.0, 1.0);
  const auto g = discretize(gf, suggested_grid(gf, 8192));
  CHECK(g.covariance()[0] == doctest::Approx(1.0).epsilon(1e-6));

  const auto mix = AnalyticDensity::mixture(
      {AnalyticDensity::gaussian(-1.0, 1.0), AnalyticDensity::gaussian(1.0, 1.0)},
      {0.5, 0.5});
  const auto m = discretize(mix, suggested_grid(mix, 4096));
  CHECK(std::abs(m.mean()[0]) < 1e-9);
  CHECK(mix.moment_mean()[0] == doctest::Approx(0.0));
}

TEST_CASE("every discretize output is normalized") {
  for (const auto& fam :
       {AnalyticDensity::gaussian(0.3, 2.0), AnalyticDensity::uniform(-1.0, 3.0),
        AnalyticDensity::exponential(0.5), AnalyticDensity::laplace(2.0),
        AnalyticDensity::cauchy(1.5)}) {
    const auto g = discretize(fam, suggested_grid(fam, 1024));
    CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("scaling a grid equals discretizing the scaled analytic density") {
  const double t = 2.0;
  for (bool laplace : {false, true}) {
    const auto fam = laplace ? AnalyticDensity::laplace(1.0)
                             : AnalyticDensity::gaussian(0.0, 1.0);
    const auto base = discretize(fam, suggested_grid(fam, 8192));
    const auto scaled = scale_density(base, t);
    // direct discretization of the scaled pdf on the re-derived grid
    std::vector<double> direct(scaled.spec().count[0]);
    for (long i = 0; i < scaled.spec().count[0]; ++i) {
      const double x = scaled.spec().node(0, i);
      direct[i] = fam.pdf1(x / std::sqrt(t)) / std::sqrt(t);
    }
    double worst = 0.0;
    for (long i = 0; i < scaled.spec().count[0]; ++i)
      worst = std::max(worst, std::abs(scaled.values()[i] - direct[i]));
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("interpolating resample reproduces a smooth scaled density") {
  const double t = 2.0;
  const auto fam = AnalyticDensity::gaussian(0.0, 1.0);
  const auto scaled = scale_density(discretize(fam, suggested_grid(fam, 8192)), t);
  const auto ref_spec = GridSpec::nodes_1d(-6.0, 6.0, 4096);
  const auto resampled = repi::resample(scaled, ref_spec);
  double worst = 0.0;
  for (long i = 0; i < ref_spec.count[0]; ++i) {
    const double x = ref_spec.node(0, i);
    worst = std::max(worst,
                     std::abs(resampled.values()[i] -
                              oracle::gaussian_pdf(x, 0.0, t)));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("doubling resolution does not worsen the mass defect") {
  for (const auto& fam :
       {AnalyticDensity::laplace(1.0), AnalyticDensity::exponential(1.0)}) {
    double prev = 1.0;
    for (long n : {32, 64, 128, 256, 512, 1024}) {
      GridSpec spec = fam.dim() == 1 && fam.jump_points(0).empty()
                          ? suggested_grid(fam, n)
                          : suggested_grid(fam, n);
      const double defect = discretize(fam, spec).mass_defect();
      CHECK(defect <= prev + 1e-12);
      prev = defect;
    }
  }
  // smooth families sit at the roundoff floor for every resolution
  const auto gf = AnalyticDensity::gaussian(0.0, 1.0);
  for (long n : {64, 128, 256})
    CHECK(discretize(gf, suggested_grid(gf, n)).mass_defect() < 1e-9);
}

TEST_CASE("grid and parameter validation") {
  CHECK_THROWS_AS(GridSpec::nodes_1d(0.0, 1.0, 8), repi::invalid_input);
  CHECK_THROWS_AS(GridSpec::nodes_1d(1.0, 1.0, 64), repi::invalid_input);
  // non-finite and negative sample values signal broken inputs
  auto spec = GridSpec::nodes_1d(0.0, 1.0, 64);
  std::vector<double> bad(64, 1.0);
  bad[7] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(GridDensity::from_samples(spec, bad), repi::numeric_error);
  bad[7] = -0.5;
  CHECK_THROWS_AS(GridDensity::from_samples(spec, bad), repi::numeric_error);
  CHECK_THROWS_AS(GridSpec::nodes_2d(0, 1, 8192, 0, 1, 8192),
                  repi::budget_error);
  CHECK_THROWS_AS(AnalyticDensity::gaussian(0.0, -1.0), repi::invalid_input);
  CHECK_THROWS_AS(AnalyticDensity::uniform(1.0, 0.0), repi::invalid_input);
  CHECK_THROWS_AS(AnalyticDensity::exponential(0.0), repi::invalid_input);
  CHECK_THROWS_AS(
      AnalyticDensity::mixture({AnalyticDensity::gaussian(0.0, 1.0)}, {0.9}),
      repi::invalid_input);
  // degenerate scale makes the pdf blow up into a non-representable spike
  const auto fam = AnalyticDensity::gaussian(0.0, 1.0);
  CHECK_THROWS(scale_density(discretize(fam, suggested_grid(fam, 1024)), 0.0));
}

TEST_CASE("two-dimensional discretization carries sane moments") {
  const auto fam = AnalyticDensity::gaussian2({0.5, -0.25}, {1.0, 2.0, 0.3});
  const auto g = discretize(fam, suggested_grid(fam, 256));
  CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-9));
  const auto mean = g.mean();
  CHECK(mean[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(mean[1] == doctest::Approx(-0.25).epsilon(1e-6));
  const auto cov = g.covariance();
  CHECK(cov[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(cov[1] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(cov[2] == doctest::Approx(0.3).epsilon(1e-4));
}
