#include "core/renyi.hpp"

#include <cmath>

namespace repi {

RenyiOrder RenyiOrder::of(double p) {
  if (std::isinf(p) && p > 0.0) return infinity();
  if (!(p > 0.0) || !std::isfinite(p))
    throw invalid_input("entropy order must lie in (0, inf]");
  RenyiOrder o;
  o.p = p;
  if (p == 1.0)
    o.cls = Class::Shannon;
  else if (p < 1.0)
    o.cls = Class::Sub1;
  else
    o.cls = Class::Super1;
  return o;
}

EntropyValue renyi_entropy(const GridDensity& f, RenyiOrder order) {
  EntropyValue out;
  out.order = order;
  out.dim = f.dim();
  out.truncated_source = f.truncated();
  switch (order.cls) {
    case RenyiOrder::Class::Shannon:
      out.value = f.shannon_integral();
      break;
    case RenyiOrder::Class::Infinity:
      // ess-sup of the piecewise representation is the node maximum
      out.value = -std::log(f.max_value());
      break;
    default:
      out.value = std::log(f.lp_integral(order.p)) / (1.0 - order.p);
      break;
  }
  if (!std::isfinite(out.value)) throw numeric_error("entropy is not finite");
  return out;
}

EntropyValue renyi_entropy(const AnalyticDensity& f, RenyiOrder order,
                           long grid_n, double box_sigmas) {
  if (f.has_closed_form(order)) {
    EntropyValue out;
    out.order = order;
    out.dim = f.dim();
    out.value = f.closed_entropy(order);
    out.truncated_source = false;
    return out;
  }
  // Cauchy below p = 1/2 diverges; a truncated grid value would be a grid
  // artifact rather than an entropy
  if (std::holds_alternative<CauchyFamily>(f.family()) && !order.is_infinite() &&
      order.p <= 0.5)
    throw numeric_error("integral of f^p diverges for this family at p <= 1/2");
  const double hint = order.is_infinite() ? 1.5 : order.p;
  const GridDensity g = discretize(f, suggested_grid(f, grid_n, hint, box_sigmas));
  return renyi_entropy(g, order);
}

double entropy_power_from(double entropy_nats, int dim) {
  if (dim != 1 && dim != 2) throw invalid_input("dimension must be 1 or 2");
  return std::exp(2.0 * entropy_nats / static_cast<double>(dim));
}

double entropy_power(const GridDensity& f, RenyiOrder order) {
  return entropy_power_from(renyi_entropy(f, order).value, f.dim());
}

double entropy_power(const AnalyticDensity& f, RenyiOrder order, long grid_n,
                     double box_sigmas) {
  return entropy_power_from(renyi_entropy(f, order, grid_n, box_sigmas).value,
                            f.dim());
}

std::array<EntropyValue, 3> shannon_limit_check(const GridDensity& f,
                                                double eps) {
  if (!(eps > 0.0) || eps > 0.1)
    throw invalid_input("shannon limit eps must lie in (0, 0.1]");
  return {renyi_entropy(f, RenyiOrder::of(1.0 - eps)),
          renyi_entropy(f, RenyiOrder::of(1.0)),
          renyi_entropy(f, RenyiOrder::of(1.0 + eps))};
}

std::array<EntropyValue, 3> shannon_limit_check(const AnalyticDensity& f,
                                                double eps, long grid_n) {
  if (!(eps > 0.0) || eps > 0.1)
    throw invalid_input("shannon limit eps must lie in (0, 0.1]");
  return {renyi_entropy(f, RenyiOrder::of(1.0 - eps), grid_n),
          renyi_entropy(f, RenyiOrder::of(1.0), grid_n),
          renyi_entropy(f, RenyiOrder::of(1.0 + eps), grid_n)};
}

}  // namespace repi
