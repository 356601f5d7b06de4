#include "core/thermo.hpp"

#include <cmath>
#include <vector>

#include "core/renyi.hpp"

namespace repi {

namespace {

std::vector<double> sample_hamiltonian(
    const std::function<double(double, double)>& hamiltonian,
    const GridSpec& spec) {
  std::vector<double> h(spec.total_nodes());
  for (long i0 = 0; i0 < spec.count[0]; ++i0)
    for (long i1 = 0; i1 < spec.count[1]; ++i1) {
      const double v = hamiltonian(spec.node(0, i0), spec.node(1, i1));
      if (!std::isfinite(v)) throw numeric_error("non-finite Hamiltonian value");
      h[spec.index(i0, i1)] = v;
    }
  return h;
}

// trapezoid integral of exp(-H/T) over the phase grid
double partition_function(const std::vector<double>& h_values,
                          const GridSpec& spec, double temperature) {
  double acc = 0.0;
  for (long i0 = 0; i0 < spec.count[0]; ++i0) {
    const double w0 = spec.weight(0, i0);
    for (long i1 = 0; i1 < spec.count[1]; ++i1)
      acc += w0 * spec.weight(1, i1) *
             std::exp(-h_values[spec.index(i0, i1)] / temperature);
  }
  return acc * spec.cell_volume();
}

// bisect ln Z(T0) = 0; Z is monotone increasing in T for H bounded below
// by zero-ish values, which the bracket test verifies directly
double solve_t0(const std::vector<double>& h, const GridSpec& spec) {
  auto log_z = [&](double t) { return std::log(partition_function(h, spec, t)); };
  double lo = 1e-8, hi = 1e8;
  if (!(log_z(lo) < 0.0 && log_z(hi) > 0.0))
    throw numeric_error("unit partition function not bracketed on the grid");
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_z(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void check_grid(const GridSpec& phase_grid) {
  phase_grid.validate();
  if (phase_grid.dim != 2)
    throw invalid_input("phase-space grid must be two-dimensional");
}

}  // namespace

double solve_unit_partition_temperature(
    const std::function<double(double, double)>& hamiltonian,
    const GridSpec& phase_grid) {
  check_grid(phase_grid);
  return solve_t0(sample_hamiltonian(hamiltonian, phase_grid), phase_grid);
}

ThermoCheck thermo_renyi_check(
    const std::function<double(double, double)>& hamiltonian,
    const GridSpec& phase_grid, double temperature) {
  check_grid(phase_grid);
  if (!(temperature > 0.0))
    throw invalid_input("temperature must be positive");

  const std::vector<double> h = sample_hamiltonian(hamiltonian, phase_grid);
  const double t0 = solve_t0(h, phase_grid);

  const double order = t0 / temperature;
  if (std::abs(order - 1.0) <= 1e-12)
    throw invalid_input("temperature equal to T0 gives the degenerate order 1");

  // reference density e^(-H/T0); unit mass by construction of T0, and the
  // grid normalization removes the residual root error
  std::vector<double> p0(h.size());
  for (size_t i = 0; i < h.size(); ++i) p0[i] = std::exp(-h[i] / t0);

  ThermoCheck out;
  out.t0 = t0;
  out.order = order;
  out.entropy_direct =
      renyi_entropy(GridDensity::from_samples(phase_grid, std::move(p0)),
                    RenyiOrder::of(order))
          .value;
  const double free_energy =
      -temperature * std::log(partition_function(h, phase_grid, temperature));
  out.entropy_free_energy = -free_energy / (temperature - t0);
  return out;
}

}  // namespace repi
