#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lindgauss {

/// Numerically stable hyperbolic cotangent for x > 0.
///
/// Below 1e-4 the Laurent series 1/x + x/3 - x^3/45 avoids the loss of
/// significance in 1/tanh(x); the truncation error there is O(x^5) ~ 1e-21.
/// For large x, tanh saturates to 1 in double precision, so the result
/// saturates to 1 as it should.
inline double coth(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("coth(): argument must be positive");
  }
  if (x < 1e-4) {
    return 1.0 / x + x / 3.0 - x * x * x / 45.0;
  }
  return 1.0 / std::tanh(x);
}

/// Symplectic form J for n modes in canonical ordering (q1,p1,q2,p2,...):
/// per-mode blocks [[0,1],[-1,0]], so [z_a, z_b] = i*hbar*J_ab.
inline Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes <= 0) {
    throw std::invalid_argument("symplectic_form(): n_modes must be positive");
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    J(2 * k, 2 * k + 1) = 1.0;
    J(2 * k + 1, 2 * k) = -1.0;
  }
  return J;
}

/// Smallest eigenvalue of the Hermitian matrix sigma + (i*hbar/2) J.
/// Nonnegative (up to roundoff) exactly when sigma satisfies the
/// Robertson-Schroedinger uncertainty relation, i.e. describes a
/// physical Gaussian state.
inline double uncertainty_min_eigenvalue(const Eigen::MatrixXd& sigma,
                                         double hbar) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0) {
    throw std::invalid_argument(
        "uncertainty_min_eigenvalue(): sigma must be square with even size");
  }
  const int n = static_cast<int>(sigma.rows()) / 2;
  Eigen::MatrixXcd h = sigma.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5 * hbar) * symplectic_form(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  return es.eigenvalues().minCoeff();
}

/// FNV-1a 64-bit hash; used to stamp outputs with a stable digest of the
/// configuration bytes (std::hash carries no cross-platform guarantee).
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace lindgauss
