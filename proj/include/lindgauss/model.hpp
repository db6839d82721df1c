#pragma once

// Model description for an open network of coupled harmonic oscillators.
//
// Phase-space ordering everywhere is canonical interleaved:
// z = (q1, p1, q2, p2, ..., qN, pN).
//
// The closed system is H = H0 + HI with
//   H0 = sum_k [ p_k^2/(2 m_k) + m_k w_k^2 q_k^2 / 2
//                + mu_kk (q_k p_k + p_k q_k)/2 ],
//   HI = (1/2) sum_{k!=j} (nu_kj q_k q_j + kappa_kj p_k p_j)
//        + sum_{k!=j} mu_kj p_k q_j,
// i.e. H = (1/2) z^T G z with G assembled by hamiltonian_matrix().
//
// The environment couples through generators linear in (q, p); the dual
// Lindblad generator contributes friction (lambda), position-position (eta),
// momentum-momentum (alpha) drifts, and a diffusion matrix D handled in
// diffusion.hpp.  The asymptotic state is the Gibbs state of the decoupled
// equilibrium Hamiltonian sum_k h_k, where h_k keeps a position-momentum
// cross term mu~_kk; its effective frequency is
//   Omega_k = sqrt(w_k^2 - mu~_kk^2),
// real exactly when w_k > |mu~_kk| (the stability condition).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lindgauss/numerics.hpp"

namespace lindgauss {

/// Unit constants carried explicitly so formulas keep their hbar/k_B
/// structure; the bundled configurations use hbar = k_B = 1.
struct UnitSystem {
  double hbar = 1.0;
  double kb = 1.0;
};

/// Closed-system parameters of the oscillator network.
/// nu/kappa are symmetric coupling matrices whose *off-diagonal* entries are
/// inputs; the diagonal is fixed by convention (nu_kk = m_k w_k^2,
/// kappa_kk = 1/m_k) and materialized by the accessors below.  mu is a full
/// matrix: mu_kk is the in-mode qp cross term, mu_kj (k != j) couples
/// p_k q_j.
struct OscillatorNetwork {
  std::vector<double> masses;
  std::vector<double> frequencies;
  Eigen::MatrixXd mu;
  Eigen::MatrixXd nu;
  Eigen::MatrixXd kappa;

  int size() const { return static_cast<int>(masses.size()); }
};

/// Dissipative drift coefficients of the Lindblad generator.  lambda is
/// unconstrained (no symmetry is imposed); alpha and eta must be
/// antisymmetric.
struct LindbladSpec {
  Eigen::MatrixXd lambda;
  Eigen::MatrixXd alpha;
  Eigen::MatrixXd eta;
};

/// Equilibrium specification: the per-oscillator qp cross couplings mu~_kk
/// retained by the asymptotic Gibbs state, and the bath temperature.
struct EquilibriumSpec {
  std::vector<double> mu_tilde;
  double temperature = 0.0;
};

/// One validation finding.  `structural` marks malformed input (wrong
/// dimensions); `physical` marks well-formed input with inadmissible physics
/// (non-positive mass, instability, broken symmetry, ...).
struct Violation {
  enum class Kind { structural, physical };
  Kind kind;
  std::string message;
};

/// Empty report <=> model admissible.
using ValidationReport = std::vector<Violation>;

inline bool is_valid(const ValidationReport& report) { return report.empty(); }

/// Effective frequency Omega_k = sqrt(w_k^2 - mu~_kk^2).  Requires the
/// stability condition w_k > |mu~_kk|.
inline double effective_frequency(double omega, double mu_tilde) {
  const double disc = omega * omega - mu_tilde * mu_tilde;
  if (!(disc > 0.0)) {
    throw std::domain_error(
        "effective_frequency(): requires omega > |mu_tilde| (unstable "
        "equilibrium Hamiltonian)");
  }
  return std::sqrt(disc);
}

/// Full coupling matrices with the diagonal convention materialized.
inline Eigen::MatrixXd nu_full(const OscillatorNetwork& net) {
  Eigen::MatrixXd out = net.nu;
  for (int k = 0; k < net.size(); ++k) {
    out(k, k) = net.masses[k] * net.frequencies[k] * net.frequencies[k];
  }
  return out;
}

inline Eigen::MatrixXd kappa_full(const OscillatorNetwork& net) {
  Eigen::MatrixXd out = net.kappa;
  for (int k = 0; k < net.size(); ++k) {
    out(k, k) = 1.0 / net.masses[k];
  }
  return out;
}

namespace detail {

inline bool dims_ok(const Eigen::MatrixXd& m, int n) {
  return m.rows() == n && m.cols() == n;
}

}  // namespace detail

/// Validates the full model description.  Returns every violation found
/// (structural checks first; physical checks run only on structurally sound
/// pieces so indices in messages are meaningful).
inline ValidationReport validate_model(const OscillatorNetwork& net,
                                       const LindbladSpec& lind,
                                       const EquilibriumSpec& eq) {
  ValidationReport report;
  const int n = net.size();
  auto structural = [&report](const std::string& msg) {
    report.push_back({Violation::Kind::structural, msg});
  };
  auto physical = [&report](const std::string& msg) {
    report.push_back({Violation::Kind::physical, msg});
  };

  if (n == 0) {
    structural("dimension: network has no oscillators");
    return report;
  }
  if (static_cast<int>(net.frequencies.size()) != n) {
    structural("dimension: frequencies size != masses size");
  }
  if (!detail::dims_ok(net.mu, n)) structural("dimension: mu is not NxN");
  if (!detail::dims_ok(net.nu, n)) structural("dimension: nu is not NxN");
  if (!detail::dims_ok(net.kappa, n)) structural("dimension: kappa is not NxN");
  if (!detail::dims_ok(lind.lambda, n)) {
    structural("dimension: lambda is not NxN");
  }
  if (!detail::dims_ok(lind.alpha, n)) structural("dimension: alpha is not NxN");
  if (!detail::dims_ok(lind.eta, n)) structural("dimension: eta is not NxN");
  if (static_cast<int>(eq.mu_tilde.size()) != n) {
    structural("dimension: mu_tilde size != N");
  }
  if (!report.empty()) {
    return report;  // physical checks would index out of bounds
  }

  for (int k = 0; k < n; ++k) {
    if (!(net.masses[k] > 0.0)) {
      physical("positivity: m_" + std::to_string(k + 1) + " <= 0");
    }
    if (!(net.frequencies[k] > 0.0)) {
      physical("positivity: omega_" + std::to_string(k + 1) + " <= 0");
    }
  }
  if (!(eq.temperature > 0.0)) {
    physical("positivity: temperature <= 0");
  }

  const double tol = 0.0;  // exact symmetry expected from the input format
  if (!net.nu.isApprox(net.nu.transpose(), tol)) {
    physical("Onsager: nu not symmetric");
  }
  if (!net.kappa.isApprox(net.kappa.transpose(), tol)) {
    physical("Onsager: kappa not symmetric");
  }
  for (int k = 0; k < n; ++k) {
    if (net.nu(k, k) != 0.0) {
      physical("convention: nu diagonal must be zero on input (derived)");
      break;
    }
  }
  for (int k = 0; k < n; ++k) {
    if (net.kappa(k, k) != 0.0) {
      physical("convention: kappa diagonal must be zero on input (derived)");
      break;
    }
  }
  if (!lind.alpha.isApprox(-lind.alpha.transpose(), tol)) {
    physical("antisymmetry: alpha not antisymmetric");
  }
  if (!lind.eta.isApprox(-lind.eta.transpose(), tol)) {
    physical("antisymmetry: eta not antisymmetric");
  }

  for (int k = 0; k < n; ++k) {
    if (net.frequencies[k] > 0.0 &&
        !(net.frequencies[k] > std::abs(eq.mu_tilde[k]))) {
      const std::string i = std::to_string(k + 1);
      physical("stability: omega_" + i + " <= |mu_tilde_" + i + i + "|");
    }
  }
  return report;
}

/// Assembles G with H = (1/2) z^T G z in the interleaved ordering.
/// Precondition: the model passed validate_model (dimension errors throw;
/// physical admissibility is the caller's contract).
inline Eigen::MatrixXd hamiltonian_matrix(const OscillatorNetwork& net) {
  const int n = net.size();
  if (!detail::dims_ok(net.mu, n) || !detail::dims_ok(net.nu, n) ||
      !detail::dims_ok(net.kappa, n) ||
      static_cast<int>(net.frequencies.size()) != n || n == 0) {
    throw std::invalid_argument("hamiltonian_matrix(): inconsistent dimensions");
  }
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    G(2 * k, 2 * k) = net.masses[k] * net.frequencies[k] * net.frequencies[k];
    G(2 * k + 1, 2 * k + 1) = 1.0 / net.masses[k];
    G(2 * k, 2 * k + 1) = G(2 * k + 1, 2 * k) = net.mu(k, k);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      G(2 * k, 2 * j) = net.nu(k, j);
      G(2 * k + 1, 2 * j + 1) = net.kappa(k, j);
      // mu_kj multiplies p_k q_j, hence the (p_k, q_j) entry and its mirror.
      G(2 * k + 1, 2 * j) = net.mu(k, j);
      G(2 * j, 2 * k + 1) = net.mu(k, j);
    }
  }
  return G;
}

}  // namespace lindgauss
