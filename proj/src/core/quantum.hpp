#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "core/errors.hpp"
#include "core/report.hpp"

namespace repi {

// D-mode bosonic Gaussian state: quadrature mean (x1,p1,...,xD,pD) and
// covariance matrix, vacuum normalized so the uncertainty relation reads
// "every symplectic eigenvalue >= 1".
class GaussianQuantumState {
 public:
  GaussianQuantumState(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  static GaussianQuantumState vacuum(int modes);
  static GaussianQuantumState thermal(double nu, int modes = 1);
  static GaussianQuantumState squeezed_vacuum(double r);

  int modes() const { return modes_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return cov_; }

 private:
  int modes_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

// moduli of the eigenvalue pairs of i*Omega*gamma, each reported once,
// ascending; Omega is the direct sum of [[0,1],[-1,0]] blocks
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& gamma);

// direct sum of D symplectic-form blocks
Eigen::MatrixXd symplectic_form(int modes);

// H_p of a Gaussian state over its symplectic spectrum:
//   H_p = (1/(1-p)) sum_k ln( 2^p / ((nu_k+1)^p - (nu_k-1)^p) ),  p > 1.
// Zero for pure states.
double quantum_renyi_entropy(const GaussianQuantumState& rho, double p);

// V_p(rho)^kappa with V_p = exp(H_p / D)
double quantum_entropy_power(const GaussianQuantumState& rho, double p,
                             double kappa = 1.0);

// mode-wise beam splitter with transmissivity tau, output reduced to one
// side: gamma -> tau*gamma_x + (1-tau)*gamma_y, mean -> sqrt-weighted sum
GaussianQuantumState beamsplitter_convolve(const GaussianQuantumState& x,
                                           const GaussianQuantumState& y,
                                           double tau);

// V_p^kappa(x ⊞_tau y) vs tau^kappa V_p^kappa(x) + (1-tau)^kappa V_p^kappa(y)
// with kappa >= (p+1)/2
EpiCheckCell check_qrepi(const GaussianQuantumState& x,
                         const GaussianQuantumState& y, double tau, double p,
                         double kappa, double tol_rel = 1e-9);

// Williamson-built random valid state: gamma = S diag(nu) S^T with S composed
// of random rotations, squeezers (|r| <= 1.5) and mode mixers, and
// nu_k ~ 1 + Exponential(temperature_scale). Deterministic per seed.
GaussianQuantumState random_gaussian_state(int modes, uint64_t seed,
                                           double temperature_scale);

}  // namespace repi
