#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "core/grid.hpp"

namespace repi {

struct RenyiOrder;  // renyi.hpp

struct GaussianFamily {
  int dim = 1;
  std::array<double, 2> mean{0.0, 0.0};
  // covariance entries xx, yy, xy (yy/xy unused for dim 1)
  std::array<double, 3> cov{1.0, 1.0, 0.0};
};

struct UniformFamily {
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
};

// supported on [0, inf); 1-d only
struct ExponentialFamily {
  double rate = 1.0;
};

// iid per axis when dim == 2
struct LaplaceFamily {
  int dim = 1;
  double loc = 0.0;
  double scale = 1.0;
};

// heavy tails force truncation; the box half-width is part of the family spec
struct CauchyFamily {
  double loc = 0.0;
  double scale = 1.0;
  double box_halfwidth = 20.0;
};

class AnalyticDensity;

struct MixtureFamily {
  std::vector<AnalyticDensity> components;
  std::vector<double> weights;
};

// Closed-form distribution family. Evaluation uses the inner (one-sided)
// limit at support-edge jumps; discretize() substitutes the half-sum of the
// two one-sided limits at interior jump nodes so rectangle sums across a
// jump stay first-order exact.
class AnalyticDensity {
 public:
  using Family = std::variant<GaussianFamily, UniformFamily, ExponentialFamily,
                              LaplaceFamily, CauchyFamily, MixtureFamily>;

  explicit AnalyticDensity(Family f);

  static AnalyticDensity gaussian(double mean, double variance);
  static AnalyticDensity gaussian2(std::array<double, 2> mean,
                                   std::array<double, 3> cov);
  static AnalyticDensity uniform(double lo, double hi);
  static AnalyticDensity uniform2(std::array<double, 2> lo,
                                  std::array<double, 2> hi);
  static AnalyticDensity exponential(double rate);
  static AnalyticDensity laplace(double scale, double loc = 0.0, int dim = 1);
  static AnalyticDensity cauchy(double scale, double loc = 0.0,
                                double box_halfwidth_factor = 20.0);
  static AnalyticDensity mixture(std::vector<AnalyticDensity> components,
                                 std::vector<double> weights);

  int dim() const { return dim_; }
  const Family& family() const { return family_; }

  double pdf1(double x) const;
  double pdf2(double x, double y) const;

  // support-edge discontinuities along one axis
  std::vector<double> jump_points(int axis) const;

  bool has_closed_form(const RenyiOrder& order) const;
  double closed_entropy(const RenyiOrder& order) const;

  std::array<double, 2> moment_mean() const;       // NaN for Cauchy
  std::array<double, 3> moment_covariance() const;

  // per-axis dispersion scale used by the default box policy
  double scale_equivalent(int axis) const;

  std::string label() const;

  static AnalyticDensity from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  Family family_;
  int dim_;
};

// Default grid for a family: wide enough that the tails of f^p are
// negligible at the target order (sub-1 orders flatten tails, so their boxes
// widen), aligned so support edges sit on boundary nodes and interior modes
// sit exactly on a node.
GridSpec suggested_grid(const AnalyticDensity& src, long n_per_axis,
                        double order_hint = 1.0, double box_sigmas = 10.0);

// Samples the family on the grid and normalizes. Records the
// pre-normalization mass defect and sets the truncation flag when more than
// 1e-4 of the analytic mass fell outside the box.
GridDensity discretize(const AnalyticDensity& src, const GridSpec& spec);

}  // namespace repi
