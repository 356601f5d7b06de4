#include "core/quantum.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace repi {

namespace {

void check_state(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0)
    throw invalid_input("covariance must be square with even dimension");
  if (mean.size() != cov.rows())
    throw invalid_input("mean length must match the covariance");
  if (!mean.allFinite() || !cov.allFinite())
    throw invalid_input("state entries must be finite");
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw invalid_input("covariance must be symmetric");
  for (double nu : symplectic_eigenvalues(cov))
    if (nu < 1.0 - 1e-9)
      throw invalid_input("state violates the uncertainty relation");
}

}  // namespace

GaussianQuantumState::GaussianQuantumState(Eigen::VectorXd mean,
                                           Eigen::MatrixXd covariance)
    : modes_(static_cast<int>(covariance.rows()) / 2),
      mean_(std::move(mean)),
      cov_(std::move(covariance)) {
  check_state(mean_, cov_);
}

GaussianQuantumState GaussianQuantumState::vacuum(int modes) {
  return GaussianQuantumState(Eigen::VectorXd::Zero(2 * modes),
                              Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

GaussianQuantumState GaussianQuantumState::thermal(double nu, int modes) {
  return GaussianQuantumState(
      Eigen::VectorXd::Zero(2 * modes),
      nu * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

GaussianQuantumState GaussianQuantumState::squeezed_vacuum(double r) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
  cov(0, 0) = std::exp(2.0 * r);
  cov(1, 1) = std::exp(-2.0 * r);
  return GaussianQuantumState(Eigen::VectorXd::Zero(2), cov);
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& gamma) {
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0 || gamma.rows() == 0)
    throw invalid_input("covariance must be square with even dimension");
  if (!gamma.allFinite()) throw invalid_input("covariance entries must be finite");
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw invalid_input("covariance must be symmetric");

  const int modes = static_cast<int>(gamma.rows()) / 2;
  // M = gamma^(1/2) Omega gamma^(1/2) is antisymmetric; the eigenvalues of
  // M^T M are the squared symplectic eigenvalues, each twice
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> root_solver(gamma);
  if (root_solver.info() != Eigen::Success)
    throw numeric_error("covariance eigensolve failed");
  if (root_solver.eigenvalues().minCoeff() <= 0.0)
    throw invalid_input("covariance must be positive definite");
  const Eigen::MatrixXd root = root_solver.operatorSqrt();
  const Eigen::MatrixXd m = root * symplectic_form(modes) * root;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sq_solver(m.transpose() * m);
  if (sq_solver.info() != Eigen::Success)
    throw numeric_error("symplectic eigensolve failed");

  std::vector<double> nus(modes);
  for (int k = 0; k < modes; ++k)
    nus[k] = std::sqrt(std::max(0.0, sq_solver.eigenvalues()(2 * k)));
  return nus;  // ascending, pairs collapsed
}

double quantum_renyi_entropy(const GaussianQuantumState& rho, double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw invalid_input("quantum entropy requires finite p > 1");
  double acc = 0.0;
  for (double nu : symplectic_eigenvalues(rho.covariance())) {
    nu = std::max(nu, 1.0);  // tolerance slack below vacuum
    acc += p * std::log(2.0) -
           std::log(std::pow(nu + 1.0, p) - std::pow(nu - 1.0, p));
  }
  return acc / (1.0 - p);
}

double quantum_entropy_power(const GaussianQuantumState& rho, double p,
                             double kappa) {
  const double h = quantum_renyi_entropy(rho, p);
  return std::exp(kappa * h / static_cast<double>(rho.modes()));
}

GaussianQuantumState beamsplitter_convolve(const GaussianQuantumState& x,
                                           const GaussianQuantumState& y,
                                           double tau) {
  if (x.modes() != y.modes())
    throw invalid_input("beam splitter requires equal mode counts");
  if (!(tau >= 0.0) || !(tau <= 1.0))
    throw invalid_input("transmissivity must lie in [0,1]");
  Eigen::VectorXd mean =
      std::sqrt(tau) * x.mean() + std::sqrt(1.0 - tau) * y.mean();
  Eigen::MatrixXd cov = tau * x.covariance() + (1.0 - tau) * y.covariance();
  return GaussianQuantumState(std::move(mean), std::move(cov));
}

EpiCheckCell check_qrepi(const GaussianQuantumState& x,
                         const GaussianQuantumState& y, double tau, double p,
                         double kappa, double tol_rel) {
  if (!(tau > 0.0) || !(tau < 1.0))
    throw invalid_input("transmissivity must lie in the open interval (0,1)");
  if (kappa < 0.5 * (p + 1.0) - 1e-12)
    throw invalid_input("kappa must satisfy kappa >= (p+1)/2");
  const GaussianQuantumState z = beamsplitter_convolve(x, y, tau);
  EpiCheckCell cell;
  cell.experiment = "quantum";
  cell.p = p;
  cell.alpha = kappa;
  cell.t = tau;
  cell.dim = x.modes();
  cell.n = 0;
  cell.lhs = quantum_entropy_power(z, p, kappa);
  cell.rhs = std::pow(tau, kappa) * quantum_entropy_power(x, p, kappa) +
             std::pow(1.0 - tau, kappa) * quantum_entropy_power(y, p, kappa);
  cell.ratio = cell.lhs / cell.rhs;
  cell.pass = cell.ratio >= 1.0 - tol_rel;
  return cell;
}

namespace {

Eigen::MatrixXd mode_rotation(int modes, int k, double theta) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  s(2 * k, 2 * k) = std::cos(theta);
  s(2 * k, 2 * k + 1) = std::sin(theta);
  s(2 * k + 1, 2 * k) = -std::sin(theta);
  s(2 * k + 1, 2 * k + 1) = std::cos(theta);
  return s;
}

Eigen::MatrixXd mode_squeezer(int modes, int k, double r) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  s(2 * k, 2 * k) = std::exp(r);
  s(2 * k + 1, 2 * k + 1) = std::exp(-r);
  return s;
}

// two-mode mixer: rotation acting identically on the x and p planes
Eigen::MatrixXd mode_mixer(int modes, int a, int b, double theta) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  for (int q = 0; q < 2; ++q) {
    s(2 * a + q, 2 * a + q) = c;
    s(2 * a + q, 2 * b + q) = sn;
    s(2 * b + q, 2 * a + q) = -sn;
    s(2 * b + q, 2 * b + q) = c;
  }
  return s;
}

}  // namespace

GaussianQuantumState random_gaussian_state(int modes, uint64_t seed,
                                           double temperature_scale) {
  if (modes != 1 && modes != 2) throw invalid_input("modes must be 1 or 2");
  if (!(temperature_scale >= 0.0))
    throw invalid_input("temperature scale must be non-negative");
  SplitMix64 rng(SplitMix64::mix(seed, 0x717e5));

  Eigen::VectorXd nus(2 * modes);
  for (int k = 0; k < modes; ++k) {
    const double nu =
        1.0 + (temperature_scale > 0.0 ? rng.exponential(temperature_scale) : 0.0);
    nus(2 * k) = nu;
    nus(2 * k + 1) = nu;
  }

  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  for (int layer = 0; layer < 2; ++layer) {
    for (int k = 0; k < modes; ++k)
      s = mode_rotation(modes, k, rng.uniform(0.0, 6.283185307179586)) * s;
    for (int k = 0; k < modes; ++k)
      s = mode_squeezer(modes, k, rng.uniform(-1.5, 1.5)) * s;
    if (modes == 2)
      s = mode_mixer(modes, 0, 1, rng.uniform(0.0, 6.283185307179586)) * s;
  }

  Eigen::MatrixXd cov = s * nus.asDiagonal() * s.transpose();
  cov = 0.5 * (cov + cov.transpose());  // enforce exact symmetry
  Eigen::VectorXd mean(2 * modes);
  for (int i = 0; i < 2 * modes; ++i) mean(i) = rng.normal();
  return GaussianQuantumState(std::move(mean), std::move(cov));
}

}  // namespace repi
