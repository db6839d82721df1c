#pragma once

// Second-moment dynamics of the Gaussian network state.
//
// The covariance matrix sigma (symmetrized second moments, interleaved
// (q1,p1,...) ordering) evolves under
//
//   d(sigma)/dt = M sigma + sigma M^T + 2 D,
//
// with drift M = J G + M_diss assembled by drift_matrix() and diffusion D
// from diffusion.hpp.  For Hurwitz M the unique steady state solves
// M s + s M^T + 2 D = 0, and the flow has the closed form
//
//   sigma(t) = e^{M t} (sigma(0) - s) e^{M^T t} + s.

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "lindgauss/model.hpp"
#include "lindgauss/numerics.hpp"

namespace lindgauss {

/// Thrown when an operation requires a Hurwitz drift but the spectrum
/// reaches into the closed right half plane; carries the offending
/// eigenvalue for diagnostics.
class NonHurwitzError : public std::runtime_error {
 public:
  explicit NonHurwitzError(std::complex<double> eigenvalue)
      : std::runtime_error(format(eigenvalue)), eigenvalue_(eigenvalue) {}

  std::complex<double> eigenvalue() const { return eigenvalue_; }

 private:
  static std::string format(std::complex<double> ev) {
    std::ostringstream os;
    os << "drift matrix is not Hurwitz: eigenvalue " << ev.real();
    if (ev.imag() != 0.0) {
      os << (ev.imag() < 0 ? " - " : " + ") << std::abs(ev.imag()) << "i";
    }
    os << " has nonnegative real part";
    return os.str();
  }

  std::complex<double> eigenvalue_;
};

/// Eigenvalue of M with the largest real part (ties broken arbitrarily).
inline std::complex<double> max_real_part_eigenvalue(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("max_real_part_eigenvalue(): M must be square");
  }
  const Eigen::VectorXcd evs = Eigen::EigenSolver<Eigen::MatrixXd>(M, false)
                                   .eigenvalues();
  int arg = 0;
  for (int i = 1; i < evs.size(); ++i) {
    if (evs[i].real() > evs[arg].real()) arg = i;
  }
  return evs[arg];
}

inline bool is_hurwitz(const Eigen::MatrixXd& M) {
  return max_real_part_eigenvalue(M).real() < 0.0;
}

/// Drift matrix M = J G + M_diss.  The dissipative part places, for each
/// oscillator pair (k, j),
///   row q_k:  -lambda_kj on q_j,  -alpha_kj on p_j,
///   row p_k:  +eta_kj    on q_j,  -lambda_jk on p_j,
/// which reproduces the two-mode generator entry by entry (see
/// bogoliubov.hpp) and gives trace(M) = -2 sum_k lambda_kk.
inline Eigen::MatrixXd drift_matrix(const OscillatorNetwork& net,
                                    const LindbladSpec& lind) {
  const int n = net.size();
  if (lind.lambda.rows() != n || lind.lambda.cols() != n ||
      lind.alpha.rows() != n || lind.alpha.cols() != n ||
      lind.eta.rows() != n || lind.eta.cols() != n) {
    throw std::invalid_argument("drift_matrix(): inconsistent dimensions");
  }
  Eigen::MatrixXd M = symplectic_form(n) * hamiltonian_matrix(net);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      M(2 * k, 2 * j) -= lind.lambda(k, j);
      M(2 * k, 2 * j + 1) -= lind.alpha(k, j);
      M(2 * k + 1, 2 * j) += lind.eta(k, j);
      M(2 * k + 1, 2 * j + 1) -= lind.lambda(j, k);
    }
  }
  return M;
}

/// Covariance matrix of the Gibbs state exp(-beta H_eq)/Z, where
/// H_eq = sum_k [ p_k^2/(2 m_k) + m_k w_k^2 q_k^2/2
///                + mu~_kk (q_k p_k + p_k q_k)/2 ].
/// Block diagonal (the equilibrium state is a product over oscillators) with
/// per-block entries
///   sigma_qq = c_k / m_k,  sigma_pp = c_k m_k w_k^2,  sigma_qp = -c_k mu~_kk,
///   c_k = hbar/(2 Omega_k) coth(hbar beta Omega_k / 2),
/// hence sigma_qq sigma_pp - sigma_qp^2 = (hbar/2)^2 coth^2(...).
inline Eigen::MatrixXd gibbs_covariance(const OscillatorNetwork& net,
                                        const EquilibriumSpec& eq,
                                        const UnitSystem& units) {
  const int n = net.size();
  if (static_cast<int>(eq.mu_tilde.size()) != n) {
    throw std::invalid_argument("gibbs_covariance(): mu_tilde size != N");
  }
  if (!(eq.temperature > 0.0)) {
    throw std::domain_error("gibbs_covariance(): temperature must be positive");
  }
  const double beta = 1.0 / (units.kb * eq.temperature);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const double w = net.frequencies[k];
    const double mt = eq.mu_tilde[k];
    const double Om = effective_frequency(w, mt);
    const double c =
        units.hbar / (2.0 * Om) * coth(units.hbar * beta * Om / 2.0);
    s(2 * k, 2 * k) = c / net.masses[k];
    s(2 * k + 1, 2 * k + 1) = c * net.masses[k] * w * w;
    s(2 * k, 2 * k + 1) = s(2 * k + 1, 2 * k) = -c * mt;
  }
  return s;
}

/// The diffusion matrix that makes `stationary` an exact fixed point of the
/// flow: D = -(M s + s M^T)/2.  Used as the authoritative source against
/// which the closed-form coefficient formulas are compared.
inline Eigen::MatrixXd oracle_diffusion(const Eigen::MatrixXd& M,
                                        const Eigen::MatrixXd& stationary) {
  if (M.rows() != M.cols() || stationary.rows() != stationary.cols() ||
      M.rows() != stationary.rows()) {
    throw std::invalid_argument("oracle_diffusion(): dimension mismatch");
  }
  Eigen::MatrixXd d = -0.5 * (M * stationary + stationary * M.transpose());
  return ((d + d.transpose()) / 2.0).eval();
}

/// Matrix exponential via scaling-and-squaring with a Pade approximant.
inline Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_exponential(): matrix must be square");
  }
  return a.exp();
}

/// Unique steady state of the flow for Hurwitz M: solves
/// M s + s M^T = -2 D by dense vectorization,
/// (I (x) M + M (x) I) vec(s) = -2 vec(D).  The matrices here are tiny
/// (2N x 2N with N at most a handful), so the O(N^6) dense solve is exact
/// enough and dependency-free.  Throws NonHurwitzError otherwise.
inline Eigen::MatrixXd solve_steady_state(const Eigen::MatrixXd& M,
                                          const Eigen::MatrixXd& D) {
  const auto dim = M.rows();
  if (M.cols() != dim || D.rows() != dim || D.cols() != dim) {
    throw std::invalid_argument("solve_steady_state(): dimension mismatch");
  }
  const std::complex<double> worst = max_real_part_eigenvalue(M);
  if (!(worst.real() < 0.0)) {
    throw NonHurwitzError(worst);
  }
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd lhs = Eigen::kroneckerProduct(eye, M).eval() +
                        Eigen::kroneckerProduct(M, eye).eval();
  Eigen::VectorXd rhs = -2.0 * Eigen::Map<const Eigen::VectorXd>(
                                   D.data(), D.size());
  Eigen::VectorXd x = lhs.partialPivLu().solve(rhs);
  Eigen::MatrixXd s = Eigen::Map<Eigen::MatrixXd>(x.data(), dim, dim);
  return ((s + s.transpose()) / 2.0).eval();
}

/// Propagates the covariance by the closed form
/// sigma(t) = e^{M t} (sigma0 - s) e^{M^T t} + s, where s is the stationary
/// covariance (solve_steady_state of the same M and D).  Exact up to the
/// matrix exponential; no step-size error accumulates, and successive calls
/// compose exactly: evolve(evolve(sigma, t1), t2) = evolve(sigma, t1 + t2).
inline Eigen::MatrixXd evolve_covariance(const Eigen::MatrixXd& sigma0,
                                         const Eigen::MatrixXd& M,
                                         const Eigen::MatrixXd& stationary,
                                         double t) {
  if (t < 0.0) {
    throw std::invalid_argument("evolve_covariance(): t must be nonnegative");
  }
  if (sigma0.rows() != M.rows() || sigma0.cols() != M.rows() ||
      stationary.rows() != M.rows() || stationary.cols() != M.rows()) {
    throw std::invalid_argument("evolve_covariance(): dimension mismatch");
  }
  if (t == 0.0) {
    return sigma0;
  }
  const Eigen::MatrixXd phi = matrix_exponential(M * t);
  Eigen::MatrixXd out =
      phi * (sigma0 - stationary) * phi.transpose() + stationary;
  return ((out + out.transpose()) / 2.0).eval();
}

}  // namespace lindgauss
