#include "core/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/renyi.hpp"

namespace repi {

namespace {

constexpr double kTwoPi = 6.28318530717958647692529;

double gauss1(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(kTwoPi * var);
}

struct Gauss2Cache {
  double inv_xx, inv_yy, inv_xy, norm;
};

Gauss2Cache gauss2_cache(const GaussianFamily& g) {
  const double det = g.cov[0] * g.cov[1] - g.cov[2] * g.cov[2];
  Gauss2Cache c;
  c.inv_xx = g.cov[1] / det;
  c.inv_yy = g.cov[0] / det;
  c.inv_xy = -g.cov[2] / det;
  c.norm = 1.0 / (kTwoPi * std::sqrt(det));
  return c;
}

void require(bool ok, const char* msg) {
  if (!ok) throw invalid_input(msg);
}

}  // namespace

AnalyticDensity::AnalyticDensity(Family f) : family_(std::move(f)) {
  dim_ = std::visit(
      [](const auto& fam) -> int {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) return fam.dim;
        if constexpr (std::is_same_v<T, UniformFamily>) return fam.dim;
        if constexpr (std::is_same_v<T, ExponentialFamily>) return 1;
        if constexpr (std::is_same_v<T, LaplaceFamily>) return fam.dim;
        if constexpr (std::is_same_v<T, CauchyFamily>) return 1;
        if constexpr (std::is_same_v<T, MixtureFamily>)
          return fam.components.empty() ? 1 : fam.components.front().dim();
      },
      family_);

  std::visit(
      [this](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          require(fam.dim == 1 || fam.dim == 2, "gaussian dim must be 1 or 2");
          require(std::isfinite(fam.mean[0]) && std::isfinite(fam.mean[1]),
                  "gaussian mean must be finite");
          require(fam.cov[0] > 0.0, "gaussian covariance must be positive definite");
          if (fam.dim == 2) {
            const double det = fam.cov[0] * fam.cov[1] - fam.cov[2] * fam.cov[2];
            require(fam.cov[1] > 0.0 && det > 0.0,
                    "gaussian covariance must be positive definite");
          }
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          require(fam.dim == 1 || fam.dim == 2, "uniform dim must be 1 or 2");
          for (int a = 0; a < fam.dim; ++a)
            require(fam.hi[a] > fam.lo[a], "uniform box must have positive volume");
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          require(fam.rate > 0.0, "exponential rate must be positive");
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          require(fam.dim == 1 || fam.dim == 2, "laplace dim must be 1 or 2");
          require(fam.scale > 0.0, "laplace scale must be positive");
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          require(fam.scale > 0.0, "cauchy scale must be positive");
          require(fam.box_halfwidth > 0.0, "cauchy box half-width must be positive");
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          require(!fam.components.empty(), "mixture needs components");
          require(fam.components.size() == fam.weights.size(),
                  "mixture weights must match components");
          double sum = 0.0;
          for (double w : fam.weights) {
            require(w >= 0.0, "mixture weights must be non-negative");
            sum += w;
          }
          require(std::abs(sum - 1.0) <= 1e-12, "mixture weights must sum to 1");
          const int d = fam.components.front().dim();
          for (const auto& c : fam.components)
            require(c.dim() == d, "mixture components must share dimension");
        }
      },
      family_);
}

AnalyticDensity AnalyticDensity::gaussian(double mean, double variance) {
  GaussianFamily g;
  g.dim = 1;
  g.mean = {mean, 0.0};
  g.cov = {variance, 1.0, 0.0};
  return AnalyticDensity(g);
}

AnalyticDensity AnalyticDensity::gaussian2(std::array<double, 2> mean,
                                           std::array<double, 3> cov) {
  GaussianFamily g;
  g.dim = 2;
  g.mean = mean;
  g.cov = cov;
  return AnalyticDensity(g);
}

AnalyticDensity AnalyticDensity::uniform(double lo, double hi) {
  UniformFamily u;
  u.dim = 1;
  u.lo = {lo, 0.0};
  u.hi = {hi, 1.0};
  return AnalyticDensity(u);
}

AnalyticDensity AnalyticDensity::uniform2(std::array<double, 2> lo,
                                          std::array<double, 2> hi) {
  UniformFamily u;
  u.dim = 2;
  u.lo = lo;
  u.hi = hi;
  return AnalyticDensity(u);
}

AnalyticDensity AnalyticDensity::exponential(double rate) {
  return AnalyticDensity(ExponentialFamily{rate});
}

AnalyticDensity AnalyticDensity::laplace(double scale, double loc, int dim) {
  return AnalyticDensity(LaplaceFamily{dim, loc, scale});
}

AnalyticDensity AnalyticDensity::cauchy(double scale, double loc,
                                        double box_halfwidth_factor) {
  return AnalyticDensity(CauchyFamily{loc, scale, box_halfwidth_factor * scale});
}

AnalyticDensity AnalyticDensity::mixture(std::vector<AnalyticDensity> components,
                                         std::vector<double> weights) {
  return AnalyticDensity(MixtureFamily{std::move(components), std::move(weights)});
}

double AnalyticDensity::pdf1(double x) const {
  return std::visit(
      [x](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          return gauss1(x, fam.mean[0], fam.cov[0]);
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          return (x >= fam.lo[0] && x <= fam.hi[0])
                     ? 1.0 / (fam.hi[0] - fam.lo[0])
                     : 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          return x >= 0.0 ? fam.rate * std::exp(-fam.rate * x) : 0.0;
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          return std::exp(-std::abs(x - fam.loc) / fam.scale) / (2.0 * fam.scale);
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          const double d = (x - fam.loc) / fam.scale;
          return 1.0 / (3.14159265358979323846 * fam.scale * (1.0 + d * d));
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          double acc = 0.0;
          for (size_t i = 0; i < fam.components.size(); ++i)
            acc += fam.weights[i] * fam.components[i].pdf1(x);
          return acc;
        }
      },
      family_);
}

double AnalyticDensity::pdf2(double x, double y) const {
  return std::visit(
      [x, y](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          const auto c = gauss2_cache(fam);
          const double dx = x - fam.mean[0];
          const double dy = y - fam.mean[1];
          const double q =
              c.inv_xx * dx * dx + 2.0 * c.inv_xy * dx * dy + c.inv_yy * dy * dy;
          return c.norm * std::exp(-0.5 * q);
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          const bool in = x >= fam.lo[0] && x <= fam.hi[0] && y >= fam.lo[1] &&
                          y <= fam.hi[1];
          return in ? 1.0 / ((fam.hi[0] - fam.lo[0]) * (fam.hi[1] - fam.lo[1]))
                    : 0.0;
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          const double n =
              std::abs(x - fam.loc) + std::abs(y - fam.loc);
          return std::exp(-n / fam.scale) /
                 (4.0 * fam.scale * fam.scale);
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          double acc = 0.0;
          for (size_t i = 0; i < fam.components.size(); ++i)
            acc += fam.weights[i] * fam.components[i].pdf2(x, y);
          return acc;
        } else {
          throw invalid_input("family does not support dim 2");
        }
      },
      family_);
}

std::vector<double> AnalyticDensity::jump_points(int axis) const {
  return std::visit(
      [axis](const auto& fam) -> std::vector<double> {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, UniformFamily>) {
          return {fam.lo[axis], fam.hi[axis]};
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          return {0.0};
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          std::vector<double> pts;
          for (const auto& c : fam.components) {
            auto sub = c.jump_points(axis);
            pts.insert(pts.end(), sub.begin(), sub.end());
          }
          return pts;
        } else {
          return {};
        }
      },
      family_);
}

bool AnalyticDensity::has_closed_form(const RenyiOrder& order) const {
  return std::visit(
      [&order](const auto& fam) -> bool {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MixtureFamily>) {
          return false;
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          // integral of f^p converges only for p > 1/2
          return order.is_infinite() || order.p > 0.5;
        } else {
          (void)fam;
          return true;
        }
      },
      family_);
}

namespace {

// log(p)/(p-1), continued through p = 1 (-> 1) and p = inf (-> 0)
double order_factor(const RenyiOrder& order) {
  if (order.is_infinite()) return 0.0;
  if (order.cls == RenyiOrder::Class::Shannon) return 1.0;
  return std::log(order.p) / (order.p - 1.0);
}

}  // namespace

double AnalyticDensity::closed_entropy(const RenyiOrder& order) const {
  if (!has_closed_form(order))
    throw invalid_input("no closed-form entropy for this family/order");
  return std::visit(
      [&order](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          const double det =
              fam.dim == 2 ? fam.cov[0] * fam.cov[1] - fam.cov[2] * fam.cov[2]
                           : fam.cov[0];
          const double d = static_cast<double>(fam.dim);
          return 0.5 * std::log(std::pow(kTwoPi, d) * det) +
                 0.5 * d * order_factor(order);
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          double vol = 1.0;
          for (int a = 0; a < fam.dim; ++a) vol *= fam.hi[a] - fam.lo[a];
          return std::log(vol);
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          return -std::log(fam.rate) + order_factor(order);
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          const double per_axis =
              std::log(2.0 * fam.scale) + order_factor(order);
          return static_cast<double>(fam.dim) * per_axis;
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          const double log_pi = std::log(3.14159265358979323846);
          if (order.is_infinite()) return std::log(fam.scale) + log_pi;
          if (order.cls == RenyiOrder::Class::Shannon)
            return std::log(4.0 * 3.14159265358979323846 * fam.scale);
          const double p = order.p;
          // integral of (1+u^2)^(-p) = sqrt(pi) Gamma(p-1/2)/Gamma(p)
          const double log_int = (0.5 - p) * log_pi + std::lgamma(p - 0.5) -
                                 std::lgamma(p);
          return std::log(fam.scale) + log_int / (1.0 - p);
        } else {
          throw invalid_input("no closed-form entropy for this family");
        }
      },
      family_);
}

std::array<double, 2> AnalyticDensity::moment_mean() const {
  return std::visit(
      [](const auto& fam) -> std::array<double, 2> {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          return fam.mean;
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          return {0.5 * (fam.lo[0] + fam.hi[0]), 0.5 * (fam.lo[1] + fam.hi[1])};
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          return {1.0 / fam.rate, 0.0};
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          return {fam.loc, fam.loc};
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          return {nan, nan};
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          std::array<double, 2> m{0.0, 0.0};
          for (size_t i = 0; i < fam.components.size(); ++i) {
            const auto cm = fam.components[i].moment_mean();
            m[0] += fam.weights[i] * cm[0];
            m[1] += fam.weights[i] * cm[1];
          }
          return m;
        }
      },
      family_);
}

std::array<double, 3> AnalyticDensity::moment_covariance() const {
  return std::visit(
      [this](const auto& fam) -> std::array<double, 3> {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          return fam.cov;
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          auto sq = [](double v) { return v * v; };
          return {sq(fam.hi[0] - fam.lo[0]) / 12.0,
                  sq(fam.hi[1] - fam.lo[1]) / 12.0, 0.0};
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          return {1.0 / (fam.rate * fam.rate), 0.0, 0.0};
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          const double v = 2.0 * fam.scale * fam.scale;
          return {v, v, 0.0};
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          return {nan, nan, nan};
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          const auto mean = moment_mean();
          std::array<double, 3> c{0.0, 0.0, 0.0};
          for (size_t i = 0; i < fam.components.size(); ++i) {
            const auto cm = fam.components[i].moment_mean();
            const auto cc = fam.components[i].moment_covariance();
            const double w = fam.weights[i];
            c[0] += w * (cc[0] + (cm[0] - mean[0]) * (cm[0] - mean[0]));
            c[1] += w * (cc[1] + (cm[1] - mean[1]) * (cm[1] - mean[1]));
            c[2] += w * (cc[2] + (cm[0] - mean[0]) * (cm[1] - mean[1]));
          }
          return c;
        }
      },
      family_);
}

double AnalyticDensity::scale_equivalent(int axis) const {
  return std::visit(
      [axis](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          return std::sqrt(axis == 0 ? fam.cov[0] : fam.cov[1]);
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          return (fam.hi[axis] - fam.lo[axis]) / std::sqrt(12.0);
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          return 1.0 / fam.rate;
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          return fam.scale * std::sqrt(2.0);
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          return fam.scale;
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          double s = 0.0;
          for (const auto& c : fam.components)
            s = std::max(s, c.scale_equivalent(axis));
          return s;
        }
      },
      family_);
}

std::string AnalyticDensity::label() const {
  std::ostringstream out;
  std::visit(
      [&out](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          if (fam.dim == 1)
            out << "gaussian(m=" << fam.mean[0] << ",v=" << fam.cov[0] << ")";
          else
            out << "gaussian2(det=" << fam.cov[0] * fam.cov[1] - fam.cov[2] * fam.cov[2]
                << ")";
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          out << "uniform[" << fam.lo[0] << "," << fam.hi[0] << "]";
          if (fam.dim == 2) out << "x[" << fam.lo[1] << "," << fam.hi[1] << "]";
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          out << "exponential(rate=" << fam.rate << ")";
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          out << "laplace(b=" << fam.scale << ")";
          if (fam.dim == 2) out << "^2";
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          out << "cauchy(g=" << fam.scale << ")";
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          out << "mix(";
          for (size_t i = 0; i < fam.components.size(); ++i) {
            if (i) out << "+";
            out << fam.weights[i] << "*" << fam.components[i].label();
          }
          out << ")";
        }
      },
      family_);
  return out.str();
}

namespace {

struct AxisBox {
  double lo, hi;
  std::optional<double> snap;  // interior point to align on a node
};

// order-aware half-width multiplier for exponential-tailed families: the
// integrand f^p has scale 1/p, so sub-1 orders need wider boxes to keep the
// missing tail below the quadrature floor
double tail_exponent_target(double order_hint) {
  const double p_eff = std::clamp(order_hint, 0.5, 1.5);
  return 22.0 / p_eff;
}

AxisBox axis_box(const AnalyticDensity& src, int axis, double order_hint,
                 double box_sigmas) {
  return std::visit(
      [&](const auto& fam) -> AxisBox {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          const double sigma = src.scale_equivalent(axis);
          const double width =
              box_sigmas * sigma / std::sqrt(std::min(order_hint, 1.0));
          return {fam.mean[axis] - width, fam.mean[axis] + width, std::nullopt};
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          return {fam.lo[axis], fam.hi[axis], std::nullopt};
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          const double width =
              std::max(box_sigmas, tail_exponent_target(order_hint)) / fam.rate;
          return {0.0, width, std::nullopt};
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          const double width =
              fam.scale * std::max(box_sigmas * std::sqrt(2.0),
                                   tail_exponent_target(order_hint));
          return {fam.loc - width, fam.loc + width, fam.loc};
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          return {fam.loc - fam.box_halfwidth, fam.loc + fam.box_halfwidth,
                  fam.loc};
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          AxisBox box{0.0, 0.0, std::nullopt};
          bool first = true;
          for (const auto& c : fam.components) {
            const AxisBox cb = axis_box(c, axis, order_hint, box_sigmas);
            if (first) {
              box = cb;
              first = false;
            } else {
              box.lo = std::min(box.lo, cb.lo);
              box.hi = std::max(box.hi, cb.hi);
              box.snap = std::nullopt;
            }
          }
          return box;
        }
      },
      src.family());
}

}  // namespace

GridSpec suggested_grid(const AnalyticDensity& src, long n_per_axis,
                        double order_hint, double box_sigmas) {
  if (!(order_hint > 0.0)) throw invalid_input("order hint must be positive");
  GridSpec spec;
  spec.dim = src.dim();
  spec.count = {n_per_axis, src.dim() == 2 ? n_per_axis : 1};
  for (int a = 0; a < src.dim(); ++a) {
    const AxisBox box = axis_box(src, a, order_hint, box_sigmas);
    spec.origin[a] = box.lo;
    spec.delta[a] = (box.hi - box.lo) / static_cast<double>(n_per_axis - 1);
    if (box.snap) spec.snap_to_node(a, *box.snap);
  }
  spec.validate();
  return spec;
}

namespace {

// half-sum of the one-sided limits, applied where a support jump falls on an
// interior node (a jump on a boundary node is already handled by the
// trapezoid half-weight)
double jump_blend_1d(const AnalyticDensity& src, double x, double step) {
  const double d = 1e-7 * step;
  return 0.5 * (src.pdf1(x - d) + src.pdf1(x + d));
}

bool near_jump(double x, const std::vector<double>& jumps, double tol) {
  for (double j : jumps)
    if (std::abs(x - j) <= tol) return true;
  return false;
}

}  // namespace

GridDensity discretize(const AnalyticDensity& src, const GridSpec& spec) {
  spec.validate();
  if (spec.dim != src.dim())
    throw invalid_input("grid dimension does not match the family");

  std::vector<double> values(spec.total_nodes());
  if (spec.dim == 1) {
    const auto jumps = src.jump_points(0);
    const double tol = 1e-9 * spec.delta[0];
    for (long i = 0; i < spec.count[0]; ++i) {
      const double x = spec.node(0, i);
      const bool interior = i > 0 && i < spec.count[0] - 1;
      values[i] = (interior && near_jump(x, jumps, tol))
                      ? jump_blend_1d(src, x, spec.delta[0])
                      : src.pdf1(x);
    }
  } else {
    const auto jumps0 = src.jump_points(0);
    const auto jumps1 = src.jump_points(1);
    const double tol0 = 1e-9 * spec.delta[0];
    const double tol1 = 1e-9 * spec.delta[1];
    const double d0 = 1e-7 * spec.delta[0];
    const double d1 = 1e-7 * spec.delta[1];
    for (long i0 = 0; i0 < spec.count[0]; ++i0) {
      const double x = spec.node(0, i0);
      const bool bx = i0 > 0 && i0 < spec.count[0] - 1 && near_jump(x, jumps0, tol0);
      for (long i1 = 0; i1 < spec.count[1]; ++i1) {
        const double y = spec.node(1, i1);
        const bool by =
            i1 > 0 && i1 < spec.count[1] - 1 && near_jump(y, jumps1, tol1);
        double v;
        if (!bx && !by) {
          v = src.pdf2(x, y);
        } else {
          // Dirichlet value: average the one-sided limits per jump axis
          v = 0.0;
          const std::array<double, 2> ox = bx ? std::array<double, 2>{-d0, d0}
                                              : std::array<double, 2>{0.0, 0.0};
          const std::array<double, 2> oy = by ? std::array<double, 2>{-d1, d1}
                                              : std::array<double, 2>{0.0, 0.0};
          const int nx = bx ? 2 : 1;
          const int ny = by ? 2 : 1;
          for (int sx = 0; sx < nx; ++sx)
            for (int sy = 0; sy < ny; ++sy) v += src.pdf2(x + ox[sx], y + oy[sy]);
          v /= static_cast<double>(nx * ny);
        }
        values[spec.index(i0, i1)] = v;
      }
    }
  }
  return GridDensity::from_samples(spec, std::move(values));
}

AnalyticDensity AnalyticDensity::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw invalid_input("family spec must be an object with a 'family' key");
  const std::string kind = j.at("family").get<std::string>();
  auto num = [&j](const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
  };
  if (kind == "gaussian") {
    if (j.contains("mean") && j.at("mean").is_array()) {
      std::array<double, 2> mean{j.at("mean").at(0).get<double>(),
                                 j.at("mean").at(1).get<double>()};
      const auto& c = j.at("cov");
      std::array<double, 3> cov{c.at(0).at(0).get<double>(),
                                c.at(1).at(1).get<double>(),
                                c.at(0).at(1).get<double>()};
      return gaussian2(mean, cov);
    }
    const double var = j.contains("variance")
                           ? j.at("variance").get<double>()
                           : num("sigma", 1.0) * num("sigma", 1.0);
    return gaussian(num("mean", 0.0), var);
  }
  if (kind == "uniform") {
    if (j.contains("lo") && j.at("lo").is_array()) {
      std::array<double, 2> lo{j.at("lo").at(0).get<double>(),
                               j.at("lo").at(1).get<double>()};
      std::array<double, 2> hi{j.at("hi").at(0).get<double>(),
                               j.at("hi").at(1).get<double>()};
      return uniform2(lo, hi);
    }
    return uniform(num("lo", 0.0), num("hi", 1.0));
  }
  if (kind == "exponential") return exponential(num("rate", 1.0));
  if (kind == "laplace")
    return laplace(num("scale", 1.0), num("loc", 0.0),
                   j.contains("dim") ? j.at("dim").get<int>() : 1);
  if (kind == "cauchy") {
    CauchyFamily c;
    c.loc = num("loc", 0.0);
    c.scale = num("scale", 1.0);
    c.box_halfwidth = num("box_halfwidth", 20.0 * c.scale);
    return AnalyticDensity(c);
  }
  if (kind == "mixture") {
    std::vector<AnalyticDensity> comps;
    for (const auto& cj : j.at("components")) comps.push_back(from_json(cj));
    std::vector<double> weights = j.at("weights").get<std::vector<double>>();
    return mixture(std::move(comps), std::move(weights));
  }
  throw invalid_input("unknown family kind: " + kind);
}

nlohmann::json AnalyticDensity::to_json() const {
  nlohmann::json j;
  std::visit(
      [&j](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, GaussianFamily>) {
          j["family"] = "gaussian";
          if (fam.dim == 1) {
            j["mean"] = fam.mean[0];
            j["variance"] = fam.cov[0];
          } else {
            j["mean"] = {fam.mean[0], fam.mean[1]};
            j["cov"] = {{fam.cov[0], fam.cov[2]}, {fam.cov[2], fam.cov[1]}};
          }
        } else if constexpr (std::is_same_v<T, UniformFamily>) {
          j["family"] = "uniform";
          if (fam.dim == 1) {
            j["lo"] = fam.lo[0];
            j["hi"] = fam.hi[0];
          } else {
            j["lo"] = {fam.lo[0], fam.lo[1]};
            j["hi"] = {fam.hi[0], fam.hi[1]};
          }
        } else if constexpr (std::is_same_v<T, ExponentialFamily>) {
          j["family"] = "exponential";
          j["rate"] = fam.rate;
        } else if constexpr (std::is_same_v<T, LaplaceFamily>) {
          j["family"] = "laplace";
          j["scale"] = fam.scale;
          j["loc"] = fam.loc;
          j["dim"] = fam.dim;
        } else if constexpr (std::is_same_v<T, CauchyFamily>) {
          j["family"] = "cauchy";
          j["scale"] = fam.scale;
          j["loc"] = fam.loc;
          j["box_halfwidth"] = fam.box_halfwidth;
        } else if constexpr (std::is_same_v<T, MixtureFamily>) {
          j["family"] = "mixture";
          j["weights"] = fam.weights;
          nlohmann::json comps = nlohmann::json::array();
          for (const auto& c : fam.components) comps.push_back(c.to_json());
          j["components"] = comps;
        }
      },
      family_);
  return j;
}

}  // namespace repi
