#pragma once

#include <functional>

#include "core/grid.hpp"

namespace repi {

// Free-energy route to the entropy of order T0/T (Boltzmann constant set to
// 1). T0 solves Z(T0) = 1 on the given phase-space grid; the reference
// density e^(-H/T0) is then a normalized probability density whose entropy
// of order T0/T must equal -F(T)/(T - T0) with F(T) = -T ln Z(T).
struct ThermoCheck {
  double t0 = 0.0;                 // temperature with unit partition function
  double order = 0.0;              // T0 / T
  double entropy_direct = 0.0;     // grid entropy of the reference density
  double entropy_free_energy = 0.0;  // -F(T)/(T - T0)
};

ThermoCheck thermo_renyi_check(
    const std::function<double(double, double)>& hamiltonian,
    const GridSpec& phase_grid, double temperature);

// the T0 solve alone, for callers that express T as a multiple of T0
double solve_unit_partition_temperature(
    const std::function<double(double, double)>& hamiltonian,
    const GridSpec& phase_grid);

}  // namespace repi
