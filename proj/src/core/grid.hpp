#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core/errors.hpp"

namespace repi {

// Rectangular node lattice on R^d, d in {1,2}. Nodes sit at
// origin + i*delta per axis; quadrature is the trapezoid rule over the node
// range, so the first and last node of each axis carry half weight. Putting a
// support edge exactly on a boundary node therefore integrates the jump
// correctly and keeps the sampled supremum exact.
struct GridSpec {
  static constexpr long kCellBudget = 1L << 24;

  int dim = 1;
  std::array<double, 2> origin{0.0, 0.0};
  std::array<double, 2> delta{0.0, 0.0};
  std::array<long, 2> count{0, 1};

  // n nodes spanning [lo, hi] inclusive
  static GridSpec nodes_1d(double lo, double hi, long n);
  // n cells on [lo, hi); nodes at the left cell edges
  static GridSpec cells_1d(double lo, double hi, long n);
  static GridSpec nodes_2d(double lo0, double hi0, long n0, double lo1,
                           double hi1, long n1);

  long total_nodes() const { return count[0] * (dim == 2 ? count[1] : 1); }
  double node(int axis, long i) const { return origin[axis] + delta[axis] * static_cast<double>(i); }
  double span(int axis) const { return delta[axis] * static_cast<double>(count[axis] - 1); }
  double cell_volume() const { return dim == 2 ? delta[0] * delta[1] : delta[0]; }
  // trapezoid weight of node i along one axis
  double weight(int axis, long i) const {
    return (i == 0 || i == count[axis] - 1) ? 0.5 : 1.0;
  }
  long index(long i0, long i1) const { return i0 * count[1] + i1; }

  // shifts the axis origin so `point` lands exactly on a node
  void snap_to_node(int axis, double point);

  bool same_spacing(const GridSpec& other, double rel_tol = 1e-12) const;

  void validate() const;  // throws invalid_input / budget_error
};

// Sampled probability density. Values are node samples, normalized so the
// trapezoid mass is exactly 1. Immutable after construction.
class GridDensity {
 public:
  // Normalizes raw non-negative samples; records the pre-normalization mass
  // defect and flags truncation when more than 1e-4 of mass is missing.
  static GridDensity from_samples(const GridSpec& spec,
                                  std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  const std::vector<double>& values() const { return values_; }
  int dim() const { return spec_.dim; }

  double mass() const;                    // trapezoid integral, ~1
  double lp_integral(double p) const;     // integral of f^p
  double shannon_integral() const;        // -integral of f ln f
  double max_value() const;

  std::array<double, 2> mean() const;
  // covariance entries (xx, yy, xy); yy = xy = 0 when dim == 1
  std::array<double, 3> covariance() const;

  double mass_defect() const { return mass_defect_; }
  bool truncated() const { return truncated_; }
  double negative_clamp() const { return negative_clamp_; }

  // construction with pre-set metadata (used by operations that already
  // normalized or that must propagate flags)
  GridDensity(GridSpec spec, std::vector<double> values, double mass_defect,
              bool truncated, double negative_clamp);

 private:
  GridSpec spec_;
  std::vector<double> values_;
  double mass_defect_ = 0.0;
  bool truncated_ = false;
  double negative_clamp_ = 0.0;
};

// Density of sqrt(s)*X when f is the density of X. The grid is re-derived
// (origin and spacing scale by sqrt(s)) so the map is exact at every node.
GridDensity scale_density(const GridDensity& f, double s);

// Linear (bilinear in 2-D) resampling onto a target grid; nodes outside the
// source box evaluate to zero. Output is renormalized.
GridDensity resample(const GridDensity& f, const GridSpec& target);

}  // namespace repi
