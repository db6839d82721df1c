// Acceptance runner: one line per criterion, [PASS]/[FAIL] plus a short
// observation and the elapsed wall time.  Exit code is the failure count.
//
// Criteria:
//   1  closed-form diagonal diffusion holds the Gibbs state exactly
//   2  steady-state solves reproduce Gibbs; closed forms match the oracle
//      without counter-terms; comparison CSVs are archived
//   3  high-temperature limit of the Einstein relation
//   4  complete-positivity gate: matched counter-terms pass, unmatched fail
//   5  benchmark negativity and critical squeezing values
//   6  sweep reproduces monotonically delayed entanglement sudden death
//   7  sub-threshold squeezing: counter-terms generate transient entanglement
//   8  propagation kernels (matrix exponential, Lyapunov solve, RK4 check)
//   9  uncertainty relation preserved along trajectories
//  10  CLI output is byte-identical across repeats and thread counts

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <Eigen/Dense>

#include "lindgauss/bogoliubov.hpp"
#include "lindgauss/diffusion.hpp"
#include "lindgauss/dynamics.hpp"
#include "lindgauss/entanglement.hpp"
#include "lindgauss/model.hpp"
#include "lindgauss/numerics.hpp"
#include "lindgauss/run.hpp"

#include "oracles.hpp"

#ifndef LINDGAUSS_CLI_PATH
#error "LINDGAUSS_CLI_PATH must be defined by the build"
#endif
#ifndef LINDGAUSS_CONFIG_DIR
#error "LINDGAUSS_CONFIG_DIR must be defined by the build"
#endif
#ifndef LINDGAUSS_ARTIFACT_DIR
#error "LINDGAUSS_ARTIFACT_DIR must be defined by the build"
#endif

namespace {

using lindgauss::DiffusionSource;
using lindgauss::EquilibriumSpec;
using lindgauss::LindbladSpec;
using lindgauss::OscillatorNetwork;
using lindgauss::RunConfig;
using lindgauss::UnitSystem;

std::ostringstream g_note;

/// The coupled two-oscillator benchmark model in canonical variables:
/// unit masses and frequencies, gauge couplings mu_ll = 0.05,
/// position coupling nu_12 = 0.25, momentum coupling kappa_12 = 0.15.
OscillatorNetwork benchmark_network() {
  OscillatorNetwork net;
  net.masses = {1.0, 1.0};
  net.frequencies = {1.0, 1.0};
  net.mu = Eigen::MatrixXd::Zero(2, 2);
  net.mu(0, 0) = 0.05;
  net.mu(1, 1) = 0.05;
  net.nu = Eigen::MatrixXd::Zero(2, 2);
  net.nu(0, 1) = net.nu(1, 0) = 0.25;
  net.kappa = Eigen::MatrixXd::Zero(2, 2);
  net.kappa(0, 1) = net.kappa(1, 0) = 0.15;
  return net;
}

LindbladSpec diagonal_lindblad(int n, double rate) {
  LindbladSpec lind;
  lind.lambda = Eigen::MatrixXd::Identity(n, n) * rate;
  lind.alpha = Eigen::MatrixXd::Zero(n, n);
  lind.eta = Eigen::MatrixXd::Zero(n, n);
  return lind;
}

RunConfig benchmark_config(double squeezing) {
  RunConfig cfg;
  cfg.network = benchmark_network();
  cfg.lindblad = diagonal_lindblad(2, 0.15);
  cfg.equilibrium.mu_tilde = {0.0, 0.0};
  cfg.equilibrium.temperature = 0.5;
  cfg.initial_state = lindgauss::SqueezedThermalSpec{1.0, 1.0, squeezing};
  cfg.grid = lindgauss::GridSpec{50.0, 0.01};
  return cfg;
}

struct SweepRow {
  double zeta = 0.0;
  std::optional<double> t_sd;  // nullopt encodes "none"
  bool unstable = false;
  double e_initial = 0.0;
  double e_max = 0.0;
};

std::vector<SweepRow> parse_sweep(const std::string& csv) {
  std::vector<SweepRow> rows;
  std::istringstream in(csv);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) continue;
    SweepRow row;
    row.zeta = std::stod(cells[0]);
    if (cells[1] == "unstable") {
      row.unstable = true;
    } else {
      if (cells[1] != "none") row.t_sd = std::stod(cells[1]);
      row.e_initial = std::stod(cells[2]);
      row.e_max = std::stod(cells[3]);
    }
    rows.push_back(row);
  }
  return rows;
}

double rel_residual(const Eigen::MatrixXd& m, const Eigen::MatrixXd& sigma,
                    const Eigen::MatrixXd& d) {
  const Eigen::MatrixXd res =
      m * sigma + sigma * m.transpose() + 2.0 * d;
  const double scale =
      std::max({1.0, sigma.cwiseAbs().maxCoeff(), d.cwiseAbs().maxCoeff()});
  return res.cwiseAbs().maxCoeff() / scale;
}

// --- criterion 1: exact stationarity of the closed-form diagonal -----------

bool criterion_closed_form_stationarity() {
  std::mt19937 rng(12345);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const oracles::RandomModel mdl = oracles::random_model(rng, 1, {});
    const UnitSystem units;
    const Eigen::MatrixXd m = lindgauss::drift_matrix(mdl.network, mdl.lindblad);
    const Eigen::MatrixXd sigma =
        lindgauss::gibbs_covariance(mdl.network, mdl.equilibrium, units);
    const Eigen::MatrixXd d = lindgauss::assemble_diffusion(
        mdl.network, mdl.lindblad, mdl.equilibrium, units,
        DiffusionSource::closed_form);
    worst = std::max(worst, rel_residual(m, sigma, d));
  }
  g_note << "200 random single-mode sets, max relative residual " << worst;
  return worst <= 1e-10;
}

// --- criterion 2: steady states, oracle agreement, archived CSVs -----------

bool criterion_steady_state_and_oracle() {
  const UnitSystem units;
  std::mt19937 rng(777);
  bool ok = true;

  // Leg 1: the Lyapunov solve recovers the Gibbs state from the exact
  // diffusion for mixed-size random networks.
  int solved = 0;
  double worst_solve = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const oracles::RandomModel mdl = oracles::random_model(rng, n, {});
    const Eigen::MatrixXd m = lindgauss::drift_matrix(mdl.network, mdl.lindblad);
    if (!lindgauss::is_hurwitz(m)) continue;
    const Eigen::MatrixXd sigma =
        lindgauss::gibbs_covariance(mdl.network, mdl.equilibrium, units);
    const Eigen::MatrixXd d = lindgauss::oracle_diffusion(m, sigma);
    const Eigen::MatrixXd recovered = lindgauss::solve_steady_state(m, d);
    worst_solve = std::max(
        worst_solve, (recovered - sigma).cwiseAbs().maxCoeff() /
                         sigma.cwiseAbs().maxCoeff());
    ++solved;
  }
  ok = ok && solved >= 80 && worst_solve <= 1e-10;

  // Leg 2: with zero counter-terms and symmetric cross rates the closed
  // forms coincide with the oracle entrywise.
  oracles::RandomModelOptions opt;
  opt.zero_mu_tilde = true;
  opt.symmetric_cross = true;
  double worst_closed = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const oracles::RandomModel mdl = oracles::random_model(rng, n, opt);
    const Eigen::MatrixXd d_closed = lindgauss::assemble_diffusion(
        mdl.network, mdl.lindblad, mdl.equilibrium, units,
        DiffusionSource::closed_form);
    const Eigen::MatrixXd d_oracle = lindgauss::assemble_diffusion(
        mdl.network, mdl.lindblad, mdl.equilibrium, units,
        DiffusionSource::oracle);
    const double scale = std::max(1.0, d_oracle.cwiseAbs().maxCoeff());
    worst_closed = std::max(
        worst_closed, (d_closed - d_oracle).cwiseAbs().maxCoeff() / scale);
  }
  ok = ok && worst_closed <= 1e-10;

  // Leg 3: archive closed-form-vs-oracle comparison tables.
  namespace fs = std::filesystem;
  fs::create_directories(LINDGAUSS_ARTIFACT_DIR);
  int archived = 0;
  const auto archive = [&](const char* name, const RunConfig& cfg) {
    const std::string path =
        std::string(LINDGAUSS_ARTIFACT_DIR) + "/" + name;
    std::ofstream out(path, std::ios::binary);
    const std::string csv = lindgauss::run_diffusion_report(cfg);
    out << csv;
    if (out.good() && csv.find("entry,closed_form,oracle,abs_diff") !=
                          std::string::npos) {
      ++archived;
    }
  };
  RunConfig matched = benchmark_config(0.6);
  archive("diffusion_two_mode.csv", matched);
  RunConfig countered = matched;
  countered.equilibrium.mu_tilde = {0.1, 0.1};
  archive("diffusion_two_mode_countered.csv", countered);
  RunConfig single;
  single.network.masses = {1.0};
  single.network.frequencies = {1.0};
  single.network.mu = Eigen::MatrixXd::Constant(1, 1, 0.6);
  single.network.nu = Eigen::MatrixXd::Zero(1, 1);
  single.network.kappa = Eigen::MatrixXd::Zero(1, 1);
  single.lindblad = diagonal_lindblad(1, 0.5);
  single.equilibrium.mu_tilde = {0.6};
  single.equilibrium.temperature = 5.0;
  archive("diffusion_single_mode.csv", single);
  ok = ok && archived == 3;

  g_note << solved << "/100 Hurwitz solves, max rel err " << worst_solve
         << "; closed-vs-oracle max " << worst_closed << "; " << archived
         << " CSVs archived";
  return ok;
}

// --- criterion 3: Einstein relation high-temperature limit -----------------

bool criterion_einstein_limit() {
  const UnitSystem units;
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  std::uniform_real_distribution<double> freq(0.5, 2.0);
  std::uniform_real_distribution<double> frac(-0.3, 0.3);
  std::uniform_real_distribution<double> tfac(10.001, 100.0);
  double worst = 0.0;
  bool flags = true;
  for (int trial = 0; trial < 50; ++trial) {
    OscillatorNetwork net;
    net.masses = {mass(rng)};
    net.frequencies = {freq(rng)};
    const double mt = frac(rng) * net.frequencies[0];
    net.mu = Eigen::MatrixXd::Constant(1, 1, frac(rng) * net.frequencies[0]);
    net.nu = Eigen::MatrixXd::Zero(1, 1);
    net.kappa = Eigen::MatrixXd::Zero(1, 1);
    LindbladSpec lind = diagonal_lindblad(1, 0.3);
    EquilibriumSpec eq;
    eq.mu_tilde = {mt};
    const double omega_eff =
        lindgauss::effective_frequency(net.frequencies[0], mt);
    eq.temperature = tfac(rng) * omega_eff;  // x = hbar*Omega/(2 kB T) < 0.05
    const lindgauss::EinsteinReport rep =
        lindgauss::einstein_report(net, lind, eq, units, 0);
    worst = std::max(worst, std::abs(rep.limit_ratio - 1.0));
    flags = flags && rep.regime_flag;
  }

  // Pinned finite-temperature sample: matched counter-term oscillator at
  // moderate temperature keeps a visible coth correction.
  OscillatorNetwork net;
  net.masses = {1.0};
  net.frequencies = {1.0};
  net.mu = Eigen::MatrixXd::Constant(1, 1, 0.6);
  net.nu = Eigen::MatrixXd::Zero(1, 1);
  net.kappa = Eigen::MatrixXd::Zero(1, 1);
  EquilibriumSpec eq;
  eq.mu_tilde = {0.6};
  eq.temperature = 5.0;
  const lindgauss::EinsteinReport rep =
      lindgauss::einstein_report(net, diagonal_lindblad(1, 0.5), eq, units, 0);
  const bool anchors =
      std::abs(rep.effective_friction - 0.78125) <= 1e-12 &&
      std::abs(rep.limit_ratio - 1.0021324236655582) <= 1e-12 &&
      !rep.regime_flag;

  g_note << "50 high-temperature draws, max |ratio-1| = " << worst
         << "; friction anchor " << rep.effective_friction;
  return worst <= 0.01 && flags && anchors;
}

// --- criterion 4: complete-positivity gate ----------------------------------

bool criterion_cp_gate() {
  const UnitSystem units;
  OscillatorNetwork net;
  net.masses = {1.0};
  net.frequencies = {1.0};
  net.nu = Eigen::MatrixXd::Zero(1, 1);
  net.kappa = Eigen::MatrixXd::Zero(1, 1);
  LindbladSpec lind = diagonal_lindblad(1, 0.1);

  // Matched counter-term: admissible at every temperature.
  net.mu = Eigen::MatrixXd::Constant(1, 1, 0.3);
  bool matched_pass = true;
  for (int i = 0; i < 25; ++i) {
    EquilibriumSpec eq;
    eq.mu_tilde = {0.3};
    eq.temperature = std::pow(10.0, -2.0 + 4.0 * i / 24.0);
    const Eigen::MatrixXd d = lindgauss::assemble_diffusion(
        net, lind, eq, units, DiffusionSource::closed_form);
    const lindgauss::ConstraintReport rep =
        lindgauss::verify_cp_constraints(d, lind, units);
    matched_pass = matched_pass && rep.entries.at(0).pass && rep.all_pass();
  }

  // Unmatched counter-term at low temperature: the bound is violated.
  net.mu = Eigen::MatrixXd::Zero(1, 1);
  LindbladSpec weak = diagonal_lindblad(1, 0.05);
  EquilibriumSpec eq;
  eq.mu_tilde = {0.1};
  eq.temperature = 0.05;
  const Eigen::MatrixXd d = lindgauss::assemble_diffusion(
      net, weak, eq, units, DiffusionSource::closed_form);
  const lindgauss::ConstraintReport rep =
      lindgauss::verify_cp_constraints(d, weak, units);
  const bool unmatched_fails = !rep.entries.at(0).pass;

  g_note << "matched admissible over T in [1e-2,1e2]: "
         << (matched_pass ? "yes" : "no")
         << "; unmatched low-T violation detected: "
         << (unmatched_fails ? "yes" : "no");
  return matched_pass && unmatched_fails;
}

// --- criterion 5: benchmark negativity values -------------------------------

bool criterion_negativity_benchmarks() {
  const Eigen::MatrixXd sigma =
      lindgauss::squeezed_thermal_covariance({1.0, 1.0, 0.6});
  const double e0 = lindgauss::log_negativity(sigma, 1.0);
  const double rc = lindgauss::critical_squeezing(1.0, 1.0);
  g_note << "E(0) = " << e0 << " (ref 0.1463), r_c = " << rc
         << " (ref 0.549306)";
  return std::abs(e0 - 0.1463) <= 1e-3 &&
         std::abs(rc - 0.5493061443340549) <= 1e-5;
}

// --- criterion 6: delayed sudden death under counter-terms ------------------

bool criterion_sudden_death_delay() {
  RunConfig cfg = benchmark_config(0.6);
  cfg.sweep = lindgauss::SweepSpec{{0.0, 0.05, 0.1, 0.15, 0.2}};
  const std::string csv =
      lindgauss::run_sweep(cfg, DiffusionSource::oracle, 4);
  const std::vector<SweepRow> rows = parse_sweep(csv);
  if (rows.size() != 5) {
    g_note << "expected 5 sweep rows, got " << rows.size();
    return false;
  }
  const double expected[5] = {0.62, 0.66, 0.70, 0.75, 0.81};
  bool ok = true;
  double prev = -1.0;
  g_note << "t_sd =";
  for (int i = 0; i < 5; ++i) {
    if (rows[i].unstable || !rows[i].t_sd) {
      g_note << " (missing)";
      ok = false;
      continue;
    }
    const double t = *rows[i].t_sd;
    g_note << " " << t;
    ok = ok && t >= prev && std::abs(t - expected[i]) <= 0.05;
    prev = t;
  }
  g_note << " (nondecreasing, near " << expected[0] << ".." << expected[4]
         << "); E_max(zeta=0) = " << rows[0].e_max;
  ok = ok && rows[0].e_max > 0.14;  // initial entanglement is the maximum
  return ok;
}

// --- criterion 7: entanglement generation below threshold -------------------

bool criterion_entanglement_generation() {
  RunConfig cfg = benchmark_config(0.549);
  cfg.sweep = lindgauss::SweepSpec{{0.0, 0.1, 0.2, 0.3, 0.5, 0.7}};
  const std::string csv =
      lindgauss::run_sweep(cfg, DiffusionSource::oracle, 4);
  const std::vector<SweepRow> rows = parse_sweep(csv);
  if (rows.size() != 6) {
    g_note << "expected 6 sweep rows, got " << rows.size();
    return false;
  }
  bool ok = true;
  double best = 0.0;
  double best_zeta = 0.0;
  for (const SweepRow& row : rows) {
    if (row.zeta >= 0.7) {
      // The strongest counter-term violates the complete-positivity bound
      // so badly that the evolved covariance leaves the physical cone; the
      // sweep must flag that instead of quoting a formal negativity.
      ok = ok && row.unstable;
      continue;
    }
    if (row.unstable) {
      ok = false;
      continue;
    }
    ok = ok && row.e_initial <= 1e-3;  // starts separable (r < r_c)
    ok = ok && row.t_sd.has_value();   // any transient dies within the window
    if (row.e_max > best) {
      best = row.e_max;
      best_zeta = row.zeta;
    }
  }
  ok = ok && best > 1e-3;
  g_note << "physical rows start separable and die out; strongest transient "
         << "E_max = " << best << " at zeta = " << best_zeta
         << "; zeta = 0.7 correctly flagged unphysical";
  return ok;
}

// --- criterion 8: propagation kernels ---------------------------------------

bool criterion_kernels() {
  bool ok = true;

  // Matrix exponential against closed forms.
  const double theta = 0.77;
  Eigen::MatrixXd gen(2, 2);
  gen << 0.0, theta, -theta, 0.0;
  const Eigen::MatrixXd rot = lindgauss::matrix_exponential(gen);
  ok = ok && (rot - oracles::rotation_exponential(theta))
                     .cwiseAbs()
                     .maxCoeff() <= 1e-12;
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = -0.3;
  diag(1, 1) = 0.9;
  const Eigen::MatrixXd ediag = lindgauss::matrix_exponential(diag);
  ok = ok && std::abs(ediag(0, 0) - std::exp(-0.3)) <= 1e-12 &&
       std::abs(ediag(1, 1) - std::exp(0.9)) <= 1e-12 &&
       std::abs(ediag(0, 1)) <= 1e-15;

  // Lyapunov solve residual on the coupled benchmark with counter-terms.
  const UnitSystem units;
  const OscillatorNetwork net = benchmark_network();
  const LindbladSpec lind = diagonal_lindblad(2, 0.15);
  EquilibriumSpec eq;
  eq.mu_tilde = {0.1, 0.1};
  eq.temperature = 0.5;
  const Eigen::MatrixXd m = lindgauss::drift_matrix(net, lind);
  const Eigen::MatrixXd d = lindgauss::assemble_diffusion(
      net, lind, eq, units, DiffusionSource::oracle);
  const Eigen::MatrixXd sigma = lindgauss::solve_steady_state(m, d);
  const double solve_res = rel_residual(m, sigma, d);
  ok = ok && solve_res <= 1e-10;

  // Exact propagation against an independent RK4 integration.
  const Eigen::MatrixXd sigma0 =
      lindgauss::squeezed_thermal_covariance({1.0, 1.0, 0.6});
  const Eigen::MatrixXd direct =
      lindgauss::evolve_covariance(sigma0, m, sigma, 10.0);
  const Eigen::MatrixXd stepped =
      oracles::rk4_covariance(sigma0, m, d, 10.0, 20000);
  const double rk4_err = (direct - stepped).cwiseAbs().maxCoeff();
  ok = ok && rk4_err <= 1e-8;

  // Semigroup property.
  const Eigen::MatrixXd two_leg = lindgauss::evolve_covariance(
      lindgauss::evolve_covariance(sigma0, m, sigma, 0.7), m, sigma, 1.6);
  const Eigen::MatrixXd one_leg =
      lindgauss::evolve_covariance(sigma0, m, sigma, 2.3);
  const double semi_err = (two_leg - one_leg).cwiseAbs().maxCoeff();
  ok = ok && semi_err <= 1e-10;

  g_note << "solve residual " << solve_res << ", RK4 deviation " << rk4_err
         << ", semigroup gap " << semi_err;
  return ok;
}

// --- criterion 9: uncertainty preservation ----------------------------------

bool criterion_uncertainty() {
  const UnitSystem units;
  bool ok = true;
  double worst = 0.0;

  {
    const OscillatorNetwork net = benchmark_network();
    const LindbladSpec lind = diagonal_lindblad(2, 0.15);
    EquilibriumSpec eq;
    eq.mu_tilde = {0.05, 0.05};
    eq.temperature = 0.5;
    const Eigen::MatrixXd m = lindgauss::drift_matrix(net, lind);
    const Eigen::MatrixXd d = lindgauss::assemble_diffusion(
        net, lind, eq, units, DiffusionSource::oracle);
    const Eigen::MatrixXd stat = lindgauss::solve_steady_state(m, d);
    const Eigen::MatrixXd sigma0 =
        lindgauss::squeezed_thermal_covariance({1.0, 1.0, 0.6});
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.5 * i;
      const Eigen::MatrixXd sigma =
          lindgauss::evolve_covariance(sigma0, m, stat, t);
      const double eig =
          lindgauss::uncertainty_min_eigenvalue(sigma, units.hbar);
      worst = std::min(worst, eig);
      ok = ok && eig >= -1e-8;
    }
  }

  {
    OscillatorNetwork net;
    net.masses = {1.0};
    net.frequencies = {1.0};
    net.mu = Eigen::MatrixXd::Constant(1, 1, 0.6);
    net.nu = Eigen::MatrixXd::Zero(1, 1);
    net.kappa = Eigen::MatrixXd::Zero(1, 1);
    const LindbladSpec lind = diagonal_lindblad(1, 0.5);
    EquilibriumSpec eq;
    eq.mu_tilde = {0.6};
    eq.temperature = 5.0;
    const Eigen::MatrixXd m = lindgauss::drift_matrix(net, lind);
    const Eigen::MatrixXd d = lindgauss::assemble_diffusion(
        net, lind, eq, units, DiffusionSource::closed_form);
    const Eigen::MatrixXd stat = lindgauss::solve_steady_state(m, d);
    Eigen::MatrixXd sigma0 = Eigen::MatrixXd::Zero(2, 2);
    sigma0(0, 0) = 0.5 * std::exp(-2.0);  // strongly squeezed pure state
    sigma0(1, 1) = 0.5 * std::exp(2.0);
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.5 * i;
      const Eigen::MatrixXd sigma =
          lindgauss::evolve_covariance(sigma0, m, stat, t);
      const double eig =
          lindgauss::uncertainty_min_eigenvalue(sigma, units.hbar);
      worst = std::min(worst, eig);
      ok = ok && eig >= -1e-8;
    }
  }

  g_note << "min uncertainty eigenvalue along both trajectories: " << worst;
  return ok;
}

// --- criterion 10: CLI determinism ------------------------------------------

std::string artifact_path(const char* name) {
  return std::string(LINDGAUSS_ARTIFACT_DIR) + "/" + name;
}

int run_cli_to(const std::string& args, const std::string& out_path) {
  const std::string cmd = std::string(LINDGAUSS_CLI_PATH) + " " + args +
                          " --output " + out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return (rc == -1) ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool criterion_cli_determinism() {
  namespace fs = std::filesystem;
  fs::create_directories(LINDGAUSS_ARTIFACT_DIR);
  const std::string fig1 = std::string(LINDGAUSS_CONFIG_DIR) + "/fig1.json";
  const std::string fig2 = std::string(LINDGAUSS_CONFIG_DIR) + "/fig2.json";
  bool ok = true;

  const std::string evolve_args =
      "evolve --config " + fig1 + " --tmax 3 --dt 0.01";
  ok = ok && run_cli_to(evolve_args + " --threads 1",
                        artifact_path("evolve_t1a.csv")) == 0;
  ok = ok && run_cli_to(evolve_args + " --threads 1",
                        artifact_path("evolve_t1b.csv")) == 0;
  ok = ok && run_cli_to(evolve_args + " --threads 4",
                        artifact_path("evolve_t4.csv")) == 0;
  const std::string e1a = slurp(artifact_path("evolve_t1a.csv"));
  const bool evolve_ok = !e1a.empty() &&
                         e1a == slurp(artifact_path("evolve_t1b.csv")) &&
                         e1a == slurp(artifact_path("evolve_t4.csv"));

  const std::string sweep_args =
      "sweep --config " + fig2 + " --tmax 3 --dt 0.01";
  ok = ok && run_cli_to(sweep_args + " --threads 1",
                        artifact_path("sweep_t1a.csv")) == 0;
  ok = ok && run_cli_to(sweep_args + " --threads 1",
                        artifact_path("sweep_t1b.csv")) == 0;
  ok = ok && run_cli_to(sweep_args + " --threads 4",
                        artifact_path("sweep_t4.csv")) == 0;
  const std::string s1a = slurp(artifact_path("sweep_t1a.csv"));
  const bool sweep_ok = !s1a.empty() &&
                        s1a == slurp(artifact_path("sweep_t1b.csv")) &&
                        s1a == slurp(artifact_path("sweep_t4.csv"));

  g_note << "evolve bytes identical: " << (evolve_ok ? "yes" : "no")
         << "; sweep bytes identical: " << (sweep_ok ? "yes" : "no");
  return ok && evolve_ok && sweep_ok;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    bool (*fn)();
  };
  const Entry entries[] = {
      {"closed-form diffusion holds the Gibbs state stationary",
       criterion_closed_form_stationarity},
      {"steady-state solve and closed-vs-oracle agreement",
       criterion_steady_state_and_oracle},
      {"Einstein relation high-temperature limit", criterion_einstein_limit},
      {"complete-positivity gate separates matched from unmatched",
       criterion_cp_gate},
      {"benchmark negativity and critical squeezing",
       criterion_negativity_benchmarks},
      {"counter-terms delay entanglement sudden death",
       criterion_sudden_death_delay},
      {"counter-terms generate transient entanglement below threshold",
       criterion_entanglement_generation},
      {"propagation kernels agree with independent integrators",
       criterion_kernels},
      {"uncertainty relation preserved along trajectories",
       criterion_uncertainty},
      {"CLI output deterministic across repeats and thread counts",
       criterion_cli_determinism},
  };

  int failures = 0;
  int index = 0;
  for (const Entry& entry : entries) {
    ++index;
    g_note.str("");
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string error;
    try {
      pass = entry.fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s — %s%s%s [%.2fs]\n",
                pass ? "PASS" : "FAIL", index, entry.label,
                g_note.str().c_str(), error.empty() ? "" : " exception: ",
                error.c_str(), secs);
  }
  if (failures == 0) {
    std::printf("all %d acceptance criteria satisfied\n",
                static_cast<int>(std::size(entries)));
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
