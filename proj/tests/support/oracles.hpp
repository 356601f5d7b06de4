#pragma once

// Independent numeric oracles for the test suites. Everything here sidesteps
// the grid pipeline on purpose: adaptive quadrature on the analytic pdfs is
// the reference the grid results are judged against.

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double whole,
                                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int depth = 40) {
  // split at the midpoint so kinks at interval centers do not stall
  const double m = 0.5 * (a + b);
  return adaptive_simpson_rec(f, a, m, simpson(f, a, m), tol, depth) +
         adaptive_simpson_rec(f, m, b, simpson(f, m, b), tol, depth);
}

// integral of f^p over [a, b]
inline double lp_mass(const std::function<double(double)>& pdf, double p,
                      double a, double b) {
  return integrate([&](double x) { return std::pow(pdf(x), p); }, a, b);
}

// -integral of f ln f over [a, b]
inline double shannon(const std::function<double(double)>& pdf, double a,
                      double b) {
  return integrate(
      [&](double x) {
        const double v = pdf(x);
        return v > 0.0 ? -v * std::log(v) : 0.0;
      },
      a, b);
}

// Renyi entropy at order p by quadrature
inline double renyi(const std::function<double(double)>& pdf, double p,
                    double a, double b) {
  if (p == 1.0) return shannon(pdf, a, b);
  return std::log(lp_mass(pdf, p, a, b)) / (1.0 - p);
}

inline double gaussian_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / var) /
         std::sqrt(6.283185307179586476925287 * var);
}

// standard normal upper tail, for truncation-bound checks
inline double gaussian_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// mass of a unit Cauchy outside [-w, w], scale gamma
inline double cauchy_tail_outside(double w, double gamma) {
  return 1.0 - 2.0 / 3.14159265358979323846 * std::atan(w / gamma);
}

// 2-d tensor Simpson on a callable, fixed subdivisions per axis
inline double integrate2(const std::function<double(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         int n = 400) {
  auto inner = [&](double y) {
    return integrate([&](double x) { return f(x, y); }, ax, bx, 1e-10, 24);
  };
  (void)n;
  return integrate(inner, ay, by, 1e-10, 24);
}

}  // namespace oracle
