#pragma once

#include <complex>
#include <vector>

#include "core/grid.hpp"

namespace repi {

// weight t for the combination sqrt(t) X + sqrt(1-t) Y; the open interval is
// required when checking theorems, the endpoints only make sense for
// identity checks
struct WeightParameter {
  double t = 0.5;
  bool allow_endpoints = false;

  void validate() const {
    if (!std::isfinite(t)) throw invalid_input("weight must be finite");
    if (allow_endpoints ? (t < 0.0 || t > 1.0) : (t <= 0.0 || t >= 1.0))
      throw invalid_input(allow_endpoints
                              ? "weight must lie in [0,1]"
                              : "weight must lie in the open interval (0,1)");
  }
};

// Density of X + Y by zero-padded fast transform. Inputs must share spacing;
// the output spans the sum of the supports and is renormalized, with any
// transform ringing clamped at zero and its magnitude recorded.
GridDensity convolve(const GridDensity& f, const GridDensity& g);

// O(N^2) direct summation; the cross-check path for the transform
GridDensity convolve_direct(const GridDensity& f, const GridDensity& g);

// density of sqrt(t) X + sqrt(1-t) Y, defined as scale-then-convolve; the
// scaled inputs are resampled to a common spacing first
GridDensity weighted_combine(const GridDensity& f, const GridDensity& g,
                             WeightParameter t);

namespace detail {
// in-place iterative radix-2 transform; size must be a power of two
void fft(std::vector<std::complex<double>>& a, bool inverse);
long next_pow2(long n);
}  // namespace detail

}  // namespace repi
