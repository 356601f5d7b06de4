#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace repi {

GridSpec GridSpec::nodes_1d(double lo, double hi, long n) {
  GridSpec s;
  s.dim = 1;
  s.origin = {lo, 0.0};
  s.delta = {(hi - lo) / static_cast<double>(n - 1), 0.0};
  s.count = {n, 1};
  s.validate();
  return s;
}

GridSpec GridSpec::cells_1d(double lo, double hi, long n) {
  GridSpec s;
  s.dim = 1;
  s.origin = {lo, 0.0};
  s.delta = {(hi - lo) / static_cast<double>(n), 0.0};
  s.count = {n, 1};
  s.validate();
  return s;
}

GridSpec GridSpec::nodes_2d(double lo0, double hi0, long n0, double lo1,
                            double hi1, long n1) {
  GridSpec s;
  s.dim = 2;
  s.origin = {lo0, lo1};
  s.delta = {(hi0 - lo0) / static_cast<double>(n0 - 1),
             (hi1 - lo1) / static_cast<double>(n1 - 1)};
  s.count = {n0, n1};
  s.validate();
  return s;
}

void GridSpec::snap_to_node(int axis, double point) {
  const double k = std::round((point - origin[axis]) / delta[axis]);
  origin[axis] += point - (origin[axis] + k * delta[axis]);
}

bool GridSpec::same_spacing(const GridSpec& other, double rel_tol) const {
  if (dim != other.dim) return false;
  for (int a = 0; a < dim; ++a) {
    if (std::abs(delta[a] - other.delta[a]) > rel_tol * std::abs(delta[a]))
      return false;
  }
  return true;
}

void GridSpec::validate() const {
  if (dim != 1 && dim != 2) throw invalid_input("grid dim must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (!(delta[a] > 0.0) || !std::isfinite(delta[a]))
      throw invalid_input("grid spacing must be positive and finite");
    if (count[a] < 16) throw invalid_input("grid needs at least 16 nodes per axis");
    if (!std::isfinite(origin[a])) throw invalid_input("grid origin must be finite");
  }
  if (dim == 1 && count[1] != 1) throw invalid_input("1-d grid must have count[1] == 1");
  if (total_nodes() > kCellBudget)
    throw budget_error("grid exceeds the cell budget of 2^24 nodes");
}

GridDensity::GridDensity(GridSpec spec, std::vector<double> values,
                         double mass_defect, bool truncated,
                         double negative_clamp)
    : spec_(spec),
      values_(std::move(values)),
      mass_defect_(mass_defect),
      truncated_(truncated),
      negative_clamp_(negative_clamp) {
  spec_.validate();
  if (static_cast<long>(values_.size()) != spec_.total_nodes())
    throw invalid_input("value count does not match the grid");
}

namespace {

// sum of w(i)*term(i) with trapezoid weights, times the cell volume
template <typename Term>
double weighted_sum(const GridSpec& s, const std::vector<double>& v,
                    Term&& term) {
  double acc = 0.0;
  if (s.dim == 1) {
    for (long i = 0; i < s.count[0]; ++i) acc += s.weight(0, i) * term(v[i], i, 0L);
  } else {
    for (long i0 = 0; i0 < s.count[0]; ++i0) {
      const double w0 = s.weight(0, i0);
      double row = 0.0;
      for (long i1 = 0; i1 < s.count[1]; ++i1)
        row += s.weight(1, i1) * term(v[s.index(i0, i1)], i0, i1);
      acc += w0 * row;
    }
  }
  return acc * s.cell_volume();
}

}  // namespace

GridDensity GridDensity::from_samples(const GridSpec& spec,
                                      std::vector<double> values) {
  spec.validate();
  if (static_cast<long>(values.size()) != spec.total_nodes())
    throw invalid_input("value count does not match the grid");
  for (double v : values) {
    if (!std::isfinite(v)) throw numeric_error("non-finite density value");
    if (v < 0.0) throw numeric_error("negative density value");
  }
  const double raw_mass =
      weighted_sum(spec, values, [](double v, long, long) { return v; });
  if (!(raw_mass > 0.0)) throw numeric_error("density has no mass on the grid");
  for (double& v : values) v /= raw_mass;
  const double defect = std::abs(1.0 - raw_mass);
  return GridDensity(spec, std::move(values), defect, raw_mass < 1.0 - 1e-4,
                     0.0);
}

double GridDensity::mass() const {
  return weighted_sum(spec_, values_, [](double v, long, long) { return v; });
}

double GridDensity::lp_integral(double p) const {
  if (!(p > 0.0)) throw invalid_input("lp_integral requires p > 0");
  if (p == 1.0) return mass();
  double acc = weighted_sum(spec_, values_, [p](double v, long, long) {
    return v > 0.0 ? std::pow(v, p) : 0.0;
  });
  if (!std::isfinite(acc)) throw numeric_error("non-finite L^p accumulation");
  return acc;
}

double GridDensity::shannon_integral() const {
  double acc = weighted_sum(spec_, values_, [](double v, long, long) {
    return v > 0.0 ? -v * std::log(v) : 0.0;
  });
  if (!std::isfinite(acc)) throw numeric_error("non-finite entropy accumulation");
  return acc;
}

double GridDensity::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

std::array<double, 2> GridDensity::mean() const {
  std::array<double, 2> m{0.0, 0.0};
  m[0] = weighted_sum(spec_, values_, [this](double v, long i0, long) {
    return v * spec_.node(0, i0);
  });
  if (spec_.dim == 2)
    m[1] = weighted_sum(spec_, values_, [this](double v, long, long i1) {
      return v * spec_.node(1, i1);
    });
  return m;
}

std::array<double, 3> GridDensity::covariance() const {
  const auto m = mean();
  std::array<double, 3> c{0.0, 0.0, 0.0};
  c[0] = weighted_sum(spec_, values_, [&](double v, long i0, long) {
    const double d = spec_.node(0, i0) - m[0];
    return v * d * d;
  });
  if (spec_.dim == 2) {
    c[1] = weighted_sum(spec_, values_, [&](double v, long, long i1) {
      const double d = spec_.node(1, i1) - m[1];
      return v * d * d;
    });
    c[2] = weighted_sum(spec_, values_, [&](double v, long i0, long i1) {
      return v * (spec_.node(0, i0) - m[0]) * (spec_.node(1, i1) - m[1]);
    });
  }
  return c;
}

GridDensity scale_density(const GridDensity& f, double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw invalid_input("scale factor must be positive and finite");
  const double root = std::sqrt(s);
  GridSpec spec = f.spec();
  for (int a = 0; a < spec.dim; ++a) {
    spec.origin[a] *= root;
    spec.delta[a] *= root;
  }
  spec.validate();
  const double jac = std::pow(root, -spec.dim);
  std::vector<double> values = f.values();
  for (double& v : values) v *= jac;
  // change of variables is mass-exact node by node
  return GridDensity(spec, std::move(values), f.mass_defect(), f.truncated(),
                     f.negative_clamp());
}

namespace {

double interp_1d(const GridDensity& f, double x) {
  const GridSpec& s = f.spec();
  const double u = (x - s.origin[0]) / s.delta[0];
  if (u < 0.0 || u > static_cast<double>(s.count[0] - 1)) return 0.0;
  const long i = std::min(static_cast<long>(u), s.count[0] - 2);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * f.values()[i] + w * f.values()[i + 1];
}

double interp_2d(const GridDensity& f, double x, double y) {
  const GridSpec& s = f.spec();
  const double u = (x - s.origin[0]) / s.delta[0];
  const double v = (y - s.origin[1]) / s.delta[1];
  if (u < 0.0 || u > static_cast<double>(s.count[0] - 1)) return 0.0;
  if (v < 0.0 || v > static_cast<double>(s.count[1] - 1)) return 0.0;
  const long i = std::min(static_cast<long>(u), s.count[0] - 2);
  const long j = std::min(static_cast<long>(v), s.count[1] - 2);
  const double a = u - static_cast<double>(i);
  const double b = v - static_cast<double>(j);
  const auto& val = f.values();
  return (1.0 - a) * ((1.0 - b) * val[s.index(i, j)] + b * val[s.index(i, j + 1)]) +
         a * ((1.0 - b) * val[s.index(i + 1, j)] + b * val[s.index(i + 1, j + 1)]);
}

}  // namespace

GridDensity resample(const GridDensity& f, const GridSpec& target) {
  target.validate();
  if (target.dim != f.dim()) throw invalid_input("resample dimension mismatch");
  std::vector<double> values(target.total_nodes());
  if (target.dim == 1) {
    for (long i = 0; i < target.count[0]; ++i)
      values[i] = interp_1d(f, target.node(0, i));
  } else {
    for (long i0 = 0; i0 < target.count[0]; ++i0)
      for (long i1 = 0; i1 < target.count[1]; ++i1)
        values[target.index(i0, i1)] =
            interp_2d(f, target.node(0, i0), target.node(1, i1));
  }
  GridDensity out = GridDensity::from_samples(target, std::move(values));
  if (f.truncated())
    out = GridDensity(out.spec(), out.values(), out.mass_defect(), true,
                      out.negative_clamp());
  return out;
}

}  // namespace repi
