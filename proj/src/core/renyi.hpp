#pragma once

#include <array>
#include <limits>

#include "core/families.hpp"
#include "core/grid.hpp"

namespace repi {

// Entropy order p in (0, inf]. The Shannon point and the sup case get their
// own evaluation paths, so classify once at construction.
struct RenyiOrder {
  enum class Class { Sub1, Shannon, Super1, Infinity };

  double p = 1.0;
  Class cls = Class::Shannon;

  static RenyiOrder of(double p);
  static RenyiOrder infinity() {
    return RenyiOrder{std::numeric_limits<double>::infinity(),
                      Class::Infinity};
  }
  bool is_infinite() const { return cls == Class::Infinity; }
};

struct EntropyValue {
  double value = 0.0;  // nats
  RenyiOrder order;
  int dim = 1;
  // true when the density was truncated before normalization; sub-1 orders
  // of heavy-tailed inputs are tail-sensitive, so the caller should treat the
  // value as a truncated-surrogate
  bool truncated_source = false;
};

EntropyValue renyi_entropy(const GridDensity& f, RenyiOrder order);

// Uses the family closed form when available, otherwise discretizes on the
// suggested grid first.
EntropyValue renyi_entropy(const AnalyticDensity& f, RenyiOrder order,
                           long grid_n = 8192, double box_sigmas = 10.0);

// exp(2 H / d), strictly positive
double entropy_power_from(double entropy_nats, int dim);
double entropy_power(const GridDensity& f, RenyiOrder order);
double entropy_power(const AnalyticDensity& f, RenyiOrder order,
                     long grid_n = 8192, double box_sigmas = 10.0);

// (H_{1-eps}, H_1, H_{1+eps}); eps in (0, 0.1]
std::array<EntropyValue, 3> shannon_limit_check(const GridDensity& f,
                                                double eps);
std::array<EntropyValue, 3> shannon_limit_check(const AnalyticDensity& f,
                                                double eps,
                                                long grid_n = 8192);

}  // namespace repi
