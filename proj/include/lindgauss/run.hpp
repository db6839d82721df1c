#pragma once

// Configuration-driven run layer behind the command-line tool: JSON config
// parsing, and the check / diffusion / einstein / evolve / sweep workflows,
// each returning a deterministic text document (CSV or report).
//
// Error taxonomy (mirrored in the CLI exit codes):
//   ConfigError   -- malformed or inconsistent configuration (exit 2);
//                    messages carry the offending field path.
//   PhysicsError  -- structurally valid model with unphysical parameters or
//                    no stable steady state (exit 3); NonHurwitzError from
//                    dynamics.hpp is reported the same way.
//   check finding a violated constraint is not an exception: the report
//   carries pass/fail and the CLI maps failure to exit 4.
//
// Determinism: every cell is printed with "%.12g"; rows are assembled in
// index order no matter how many worker threads computed them, so output is
// byte-identical across runs and thread counts.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "lindgauss/bogoliubov.hpp"
#include "lindgauss/diffusion.hpp"
#include "lindgauss/dynamics.hpp"
#include "lindgauss/entanglement.hpp"
#include "lindgauss/model.hpp"
#include "lindgauss/numerics.hpp"

namespace lindgauss {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double tmax = 0.0;
  double dt = 0.0;
};

struct SweepSpec {
  std::vector<double> values;  // zeta grid, strictly ascending
};

/// Fully resolved run configuration.  Bogoliubov-block configs are mapped
/// to the canonical network at parse time; the original model is kept so
/// zeta sweeps can rebuild the counter-terms through the same mapping.
struct RunConfig {
  UnitSystem units;
  OscillatorNetwork network;
  LindbladSpec lindblad;
  EquilibriumSpec equilibrium;
  std::optional<BogoliubovModel> bogoliubov;
  std::optional<SqueezedThermalSpec> initial_state;
  std::optional<GridSpec> grid;
  std::optional<SweepSpec> sweep;
  std::uint64_t config_hash = 0;  // FNV-1a of the raw config text
};

namespace detail {

using nlohmann::json;

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(path + "." + item.key() + ": unknown key");
    }
  }
}

inline const json& require_object(const json& parent, const std::string& path,
                                  const char* key) {
  if (!parent.contains(key)) {
    throw ConfigError(path + "." + key + ": missing required block");
  }
  const json& j = parent.at(key);
  if (!j.is_object()) {
    throw ConfigError(path + "." + key + ": expected an object");
  }
  return j;
}

inline double number_field(const json& obj, const std::string& path,
                           const char* key,
                           std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key + ": missing required number");
  }
  const json& j = obj.at(key);
  if (!j.is_number()) {
    throw ConfigError(path + "." + key + ": expected a number");
  }
  return j.get<double>();
}

inline std::vector<double> vector_field(const json& obj,
                                        const std::string& path,
                                        const char* key, int expected_size) {
  if (!obj.contains(key)) {
    throw ConfigError(path + "." + key + ": missing required array");
  }
  const json& j = obj.at(key);
  if (!j.is_array()) {
    throw ConfigError(path + "." + key + ": expected an array of numbers");
  }
  if (expected_size >= 0 && static_cast<int>(j.size()) != expected_size) {
    throw ConfigError(path + "." + key + ": expected " +
                      std::to_string(expected_size) + " entries, got " +
                      std::to_string(j.size()));
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number()) {
      throw ConfigError(path + "." + key + ": expected numeric entries");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

inline Eigen::MatrixXd matrix_field(const json& obj, const std::string& path,
                                    const char* key, int n,
                                    bool required = false) {
  if (!obj.contains(key)) {
    if (!required && n >= 0) return Eigen::MatrixXd::Zero(n, n);
    throw ConfigError(path + "." + key + ": missing required matrix");
  }
  const json& j = obj.at(key);
  if (!j.is_array() || j.empty()) {
    throw ConfigError(path + "." + key + ": expected a nonempty array of rows");
  }
  if (n < 0) n = static_cast<int>(j.size());
  if (static_cast<int>(j.size()) != n) {
    throw ConfigError(path + "." + key + ": expected " + std::to_string(n) +
                      " rows");
  }
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ConfigError(path + "." + key + "[" + std::to_string(r) +
                        "]: expected " + std::to_string(n) + " numbers");
    }
    for (int c = 0; c < n; ++c) {
      const json& v = row.at(c);
      if (!v.is_number()) {
        throw ConfigError(path + "." + key + "[" + std::to_string(r) +
                          "]: expected numeric entries");
      }
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

/// Runs the model validation and converts violations to the layered error
/// taxonomy: structural defects are configuration errors, physical ones are
/// physics errors.
inline void validate_or_throw(const OscillatorNetwork& net,
                              const LindbladSpec& lind,
                              const EquilibriumSpec& eq) {
  const ValidationReport report = validate_model(net, lind, eq);
  std::string structural;
  std::string physical;
  for (const Violation& v : report) {
    std::string& dst =
        v.kind == Violation::Kind::structural ? structural : physical;
    if (!dst.empty()) dst += "; ";
    dst += v.message;
  }
  if (!structural.empty()) throw ConfigError("config: " + structural);
  if (!physical.empty()) throw PhysicsError(physical);
}

inline std::string format_number(double v) {
  if (!std::isfinite(v)) {
    throw PhysicsError("non-finite value reached the output layer");
  }
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_hash(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

/// Index-ordered parallel map: fn(i) for i in [0, n).  Worker count never
/// affects results; exceptions are rethrown for the lowest failing index.
inline void parallel_for(int n, int threads,
                         const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::string quadrature_label(int index) {
  return (index % 2 == 0 ? "q" : "p") + std::to_string(index / 2 + 1);
}

}  // namespace detail

inline const char* diffusion_source_name(DiffusionSource source) {
  return source == DiffusionSource::oracle ? "oracle" : "closed-form";
}

/// Parses and fully validates a JSON configuration document.
inline RunConfig parse_config(const std::string& text) {
  using detail::check_keys;
  using detail::matrix_field;
  using detail::number_field;
  using detail::require_object;
  using detail::vector_field;
  using nlohmann::json;

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config: top level must be an object");
  }
  check_keys(root, "config",
             {"units", "network", "bogoliubov", "lindblad", "equilibrium",
              "initial_state", "grid", "sweep"});

  RunConfig cfg;
  cfg.config_hash = fnv1a(text);

  if (root.contains("units")) {
    const json& u = root.at("units");
    if (!u.is_object()) throw ConfigError("config.units: expected an object");
    check_keys(u, "units", {"hbar", "kb"});
    cfg.units.hbar = number_field(u, "units", "hbar", 1.0);
    cfg.units.kb = number_field(u, "units", "kb", 1.0);
    if (!(cfg.units.hbar > 0.0)) throw ConfigError("units.hbar: must be > 0");
    if (!(cfg.units.kb > 0.0)) throw ConfigError("units.kb: must be > 0");
  }

  const bool has_network = root.contains("network");
  const bool has_bogoliubov = root.contains("bogoliubov");
  if (has_network == has_bogoliubov) {
    throw ConfigError(
        "config: exactly one of 'network' or 'bogoliubov' must be present");
  }

  const json& eq_block = require_object(root, "config", "equilibrium");
  check_keys(eq_block, "equilibrium", {"mu_tilde", "zeta", "temperature"});
  cfg.equilibrium.temperature =
      number_field(eq_block, "equilibrium", "temperature");

  int n = 0;
  if (has_network) {
    const json& nb = root.at("network");
    if (!nb.is_object()) throw ConfigError("config.network: expected an object");
    check_keys(nb, "network", {"masses", "frequencies", "mu", "nu", "kappa"});
    cfg.network.masses = vector_field(nb, "network", "masses", -1);
    n = static_cast<int>(cfg.network.masses.size());
    if (n == 0) throw ConfigError("network.masses: must be nonempty");
    cfg.network.frequencies = vector_field(nb, "network", "frequencies", n);
    cfg.network.mu = matrix_field(nb, "network", "mu", n);
    cfg.network.nu = matrix_field(nb, "network", "nu", n);
    cfg.network.kappa = matrix_field(nb, "network", "kappa", n);

    if (eq_block.contains("mu_tilde") && eq_block.contains("zeta")) {
      throw ConfigError(
          "equilibrium: give either 'mu_tilde' or 'zeta', not both");
    }
    if (eq_block.contains("mu_tilde")) {
      cfg.equilibrium.mu_tilde =
          vector_field(eq_block, "equilibrium", "mu_tilde", n);
    } else if (eq_block.contains("zeta")) {
      cfg.equilibrium.mu_tilde.assign(
          static_cast<std::size_t>(n),
          number_field(eq_block, "equilibrium", "zeta"));
    } else {
      cfg.equilibrium.mu_tilde.assign(static_cast<std::size_t>(n), 0.0);
    }
  } else {
    const json& bb = root.at("bogoliubov");
    if (!bb.is_object()) {
      throw ConfigError("config.bogoliubov: expected an object");
    }
    check_keys(bb, "bogoliubov",
               {"k_re", "k_im", "delta_re", "delta_im", "delta_tilde_im"});
    const Eigen::MatrixXd k_re =
        matrix_field(bb, "bogoliubov", "k_re", -1, true).eval();
    n = static_cast<int>(k_re.rows());
    const Eigen::MatrixXd k_im = matrix_field(bb, "bogoliubov", "k_im", n);
    const Eigen::MatrixXd d_re = matrix_field(bb, "bogoliubov", "delta_re", n);
    const Eigen::MatrixXd d_im = matrix_field(bb, "bogoliubov", "delta_im", n);

    if (eq_block.contains("mu_tilde")) {
      throw ConfigError(
          "equilibrium.mu_tilde: not allowed with a bogoliubov block; use "
          "bogoliubov.delta_tilde_im or equilibrium.zeta");
    }
    std::vector<double> dt_im(static_cast<std::size_t>(n), 0.0);
    if (bb.contains("delta_tilde_im") && eq_block.contains("zeta")) {
      throw ConfigError(
          "equilibrium.zeta: conflicts with bogoliubov.delta_tilde_im");
    }
    if (bb.contains("delta_tilde_im")) {
      dt_im = vector_field(bb, "bogoliubov", "delta_tilde_im", n);
    } else if (eq_block.contains("zeta")) {
      dt_im.assign(static_cast<std::size_t>(n),
                   number_field(eq_block, "equilibrium", "zeta"));
    }

    BogoliubovModel bog;
    bog.k_matrix = k_re.cast<std::complex<double>>() +
                   std::complex<double>(0.0, 1.0) *
                       k_im.cast<std::complex<double>>();
    bog.delta = d_re.cast<std::complex<double>>() +
                std::complex<double>(0.0, 1.0) *
                    d_im.cast<std::complex<double>>();
    bog.delta_tilde_diag = Eigen::VectorXcd::Zero(n);
    for (int l = 0; l < n; ++l) {
      bog.delta_tilde_diag[l] = std::complex<double>(0.0, dt_im[l]);
    }
    try {
      CanonicalImage image = to_canonical(bog, cfg.units);
      cfg.network = std::move(image.network);
      cfg.equilibrium.mu_tilde = std::move(image.mu_tilde);
    } catch (const std::domain_error& e) {
      throw PhysicsError(e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("bogoliubov: ") + e.what());
    }
    cfg.bogoliubov = std::move(bog);
  }

  const json& lb = require_object(root, "config", "lindblad");
  check_keys(lb, "lindblad", {"lambda", "alpha", "eta"});
  cfg.lindblad.lambda = matrix_field(lb, "lindblad", "lambda", n, true);
  cfg.lindblad.alpha = matrix_field(lb, "lindblad", "alpha", n);
  cfg.lindblad.eta = matrix_field(lb, "lindblad", "eta", n);

  if (root.contains("initial_state")) {
    const json& ib = root.at("initial_state");
    if (!ib.is_object()) {
      throw ConfigError("config.initial_state: expected an object");
    }
    check_keys(ib, "initial_state", {"n1", "n2", "r"});
    SqueezedThermalSpec spec;
    spec.n1 = number_field(ib, "initial_state", "n1");
    spec.n2 = number_field(ib, "initial_state", "n2");
    spec.r = number_field(ib, "initial_state", "r");
    if (spec.n1 < 0.0) throw ConfigError("initial_state.n1: must be >= 0");
    if (spec.n2 < 0.0) throw ConfigError("initial_state.n2: must be >= 0");
    if (spec.r < 0.0) throw ConfigError("initial_state.r: must be >= 0");
    cfg.initial_state = spec;
  }

  if (root.contains("grid")) {
    const json& gb = root.at("grid");
    if (!gb.is_object()) throw ConfigError("config.grid: expected an object");
    check_keys(gb, "grid", {"tmax", "dt"});
    GridSpec grid;
    grid.tmax = number_field(gb, "grid", "tmax");
    grid.dt = number_field(gb, "grid", "dt");
    if (!(grid.dt > 0.0)) throw ConfigError("grid.dt: must be > 0");
    if (!(grid.tmax >= grid.dt)) throw ConfigError("grid.tmax: must be >= dt");
    cfg.grid = grid;
  }

  if (root.contains("sweep")) {
    const json& sb = root.at("sweep");
    if (!sb.is_object()) throw ConfigError("config.sweep: expected an object");
    check_keys(sb, "sweep", {"parameter", "values"});
    if (!sb.contains("parameter") || !sb.at("parameter").is_string() ||
        sb.at("parameter").get<std::string>() != "zeta") {
      throw ConfigError("sweep.parameter: only 'zeta' is supported");
    }
    SweepSpec sweep;
    sweep.values = vector_field(sb, "sweep", "values", -1);
    if (sweep.values.empty()) {
      throw ConfigError("sweep.values: must be nonempty");
    }
    for (std::size_t i = 1; i < sweep.values.size(); ++i) {
      if (!(sweep.values[i] > sweep.values[i - 1])) {
        throw ConfigError("sweep.values: must be strictly ascending");
      }
    }
    cfg.sweep = sweep;
  }

  detail::validate_or_throw(cfg.network, cfg.lindblad, cfg.equilibrium);
  return cfg;
}

/// Copy of the configuration with the steady-state coupling replaced by
/// `zeta`: directly mu~_ll = zeta for canonical configs, or through
/// Im Delta~_ll = zeta (hence mu~_ll = zeta/hbar) for Bogoliubov ones.
inline RunConfig with_zeta(const RunConfig& base, double zeta) {
  RunConfig cfg = base;
  if (cfg.bogoliubov) {
    for (int l = 0; l < cfg.bogoliubov->size(); ++l) {
      cfg.bogoliubov->delta_tilde_diag[l] = std::complex<double>(0.0, zeta);
    }
    std::fill(cfg.equilibrium.mu_tilde.begin(), cfg.equilibrium.mu_tilde.end(),
              zeta / cfg.units.hbar);
  } else {
    std::fill(cfg.equilibrium.mu_tilde.begin(), cfg.equilibrium.mu_tilde.end(),
              zeta);
  }
  return cfg;
}

namespace detail {

inline std::string provenance_header(const RunConfig& cfg,
                                     DiffusionSource source) {
  std::string out;
  out += "# config_hash: " + format_hash(cfg.config_hash) + "\n";
  out += std::string("# diffusion_source: ") + diffusion_source_name(source) +
         "\n";
  out += "# units: hbar=" + format_number(cfg.units.hbar) +
         " kb=" + format_number(cfg.units.kb) + "\n";
  out += std::string("# time_unit: ") +
         (cfg.bogoliubov ? "1/K" : "1/omega") + "\n";
  return out;
}

struct EvolveSetup {
  Eigen::MatrixXd drift;
  Eigen::MatrixXd diffusion;
  Eigen::MatrixXd stationary;
  Eigen::MatrixXd sigma0;
};

/// Shared preparation for evolve/sweep rows.  Throws PhysicsError for
/// invalid physical parameters and NonHurwitzError when no stable steady
/// state exists.
inline EvolveSetup prepare_evolution(const RunConfig& cfg,
                                     DiffusionSource source) {
  validate_or_throw(cfg.network, cfg.lindblad, cfg.equilibrium);
  EvolveSetup setup;
  setup.drift = drift_matrix(cfg.network, cfg.lindblad);
  setup.diffusion = assemble_diffusion(cfg.network, cfg.lindblad,
                                       cfg.equilibrium, cfg.units, source);
  setup.stationary = solve_steady_state(setup.drift, setup.diffusion);
  setup.sigma0 = squeezed_thermal_covariance(*cfg.initial_state);
  return setup;
}

inline GridSpec resolve_grid(const RunConfig& cfg,
                             std::optional<double> tmax_override,
                             std::optional<double> dt_override) {
  GridSpec grid;
  if (cfg.grid) grid = *cfg.grid;
  if (tmax_override) grid.tmax = *tmax_override;
  if (dt_override) grid.dt = *dt_override;
  if (!(grid.dt > 0.0)) {
    throw ConfigError("grid.dt: must be > 0 (set in config or via --dt)");
  }
  if (!(grid.tmax >= grid.dt)) {
    throw ConfigError("grid.tmax: must be >= dt (set in config or via --tmax)");
  }
  return grid;
}

inline void require_two_mode_initial_state(const RunConfig& cfg,
                                           const char* command) {
  if (cfg.network.size() != 2) {
    throw ConfigError(std::string("config: ") + command +
                      " requires a two-mode model");
  }
  if (!cfg.initial_state) {
    throw ConfigError("initial_state: required for " + std::string(command));
  }
  if (cfg.units.hbar != 1.0) {
    throw ConfigError(
        "units.hbar: evolve/sweep require hbar = 1 (the squeezed-thermal "
        "initial state is expressed in vacuum-variance-1/2 units)");
  }
}

}  // namespace detail

/// Time evolution CSV: one row per grid point with the logarithmic
/// negativity and the independent covariance entries.
inline std::string run_evolve(const RunConfig& cfg, DiffusionSource source,
                              int threads = 1,
                              std::optional<double> tmax_override = std::nullopt,
                              std::optional<double> dt_override = std::nullopt) {
  detail::require_two_mode_initial_state(cfg, "evolve");
  const GridSpec grid = detail::resolve_grid(cfg, tmax_override, dt_override);
  const detail::EvolveSetup setup = detail::prepare_evolution(cfg, source);

  const int steps = static_cast<int>(std::llround(grid.tmax / grid.dt));
  const int rows = steps + 1;
  std::vector<std::string> lines(static_cast<std::size_t>(rows));
  detail::parallel_for(rows, threads, [&](int i) {
    const double t = i * grid.dt;
    const Eigen::MatrixXd sigma =
        evolve_covariance(setup.sigma0, setup.drift, setup.stationary, t);
    const double e = log_negativity(sigma, cfg.units.hbar);
    std::string& line = lines[static_cast<std::size_t>(i)];
    line = detail::format_number(t);
    line += "," + detail::format_number(e);
    const std::pair<int, int> cells[] = {{0, 0}, {1, 1}, {0, 1}, {2, 2},
                                         {3, 3}, {2, 3}, {0, 2}, {1, 3}};
    for (const auto& [r, c] : cells) {
      line += "," + detail::format_number(sigma(r, c));
    }
  });

  std::string out = detail::provenance_header(cfg, source);
  out +=
      "t,E,sigma_q1q1,sigma_p1p1,sigma_q1p1,sigma_q2q2,sigma_p2p2,"
      "sigma_q2p2,sigma_q1q2,sigma_p1p2\n";
  for (const std::string& line : lines) {
    out += line;
    out += "\n";
  }
  return out;
}

/// Zeta-sweep CSV: per zeta, the sudden-death time of the logarithmic
/// negativity ("none" when entanglement survives the final sample), its
/// initial value, and its maximum over the grid.  A zeta with unphysical
/// equilibrium or non-Hurwitz drift yields an "unstable" row instead of
/// aborting the sweep.
inline std::string run_sweep(const RunConfig& cfg, DiffusionSource source,
                             int threads = 1,
                             std::optional<double> tmax_override = std::nullopt,
                             std::optional<double> dt_override = std::nullopt) {
  detail::require_two_mode_initial_state(cfg, "sweep");
  if (!cfg.sweep) {
    throw ConfigError("sweep: block required for the sweep command");
  }
  const GridSpec grid = detail::resolve_grid(cfg, tmax_override, dt_override);
  const int steps = static_cast<int>(std::llround(grid.tmax / grid.dt));
  const int points = static_cast<int>(cfg.sweep->values.size());

  std::vector<std::string> lines(static_cast<std::size_t>(points));
  detail::parallel_for(points, threads, [&](int s) {
    const double zeta = cfg.sweep->values[static_cast<std::size_t>(s)];
    std::string& line = lines[static_cast<std::size_t>(s)];
    line = detail::format_number(zeta);
    try {
      const RunConfig point = with_zeta(cfg, zeta);
      const detail::EvolveSetup setup =
          detail::prepare_evolution(point, source);
      NegativityTrajectory traj;
      traj.times.resize(static_cast<std::size_t>(steps) + 1);
      traj.values.resize(static_cast<std::size_t>(steps) + 1);
      for (int i = 0; i <= steps; ++i) {
        const double t = i * grid.dt;
        const Eigen::MatrixXd sigma =
            evolve_covariance(setup.sigma0, setup.drift, setup.stationary, t);
        traj.times[static_cast<std::size_t>(i)] = t;
        traj.values[static_cast<std::size_t>(i)] =
            log_negativity(sigma, point.units.hbar);
      }
      const std::optional<double> death = sudden_death_time(traj);
      const double e_max =
          *std::max_element(traj.values.begin(), traj.values.end());
      line += death ? "," + detail::format_number(*death) : ",none";
      line += "," + detail::format_number(traj.values.front());
      line += "," + detail::format_number(e_max);
    } catch (const NonHurwitzError&) {
      line += ",unstable,unstable,unstable";
    } catch (const PhysicsError&) {
      line += ",unstable,unstable,unstable";
    } catch (const std::domain_error&) {
      line += ",unstable,unstable,unstable";
    }
  });

  std::string out = detail::provenance_header(cfg, source);
  out += "zeta,t_sudden_death,E_initial,E_max\n";
  for (const std::string& line : lines) {
    out += line;
    out += "\n";
  }
  return out;
}

/// Side-by-side comparison of the closed-form coefficients against the
/// stationarity oracle, one row per independent entry of D.
inline std::string run_diffusion_report(const RunConfig& cfg) {
  const Eigen::MatrixXd closed =
      assemble_diffusion(cfg.network, cfg.lindblad, cfg.equilibrium, cfg.units,
                         DiffusionSource::closed_form);
  const Eigen::MatrixXd oracle =
      assemble_diffusion(cfg.network, cfg.lindblad, cfg.equilibrium, cfg.units,
                         DiffusionSource::oracle);
  std::string out = "# config_hash: " + detail::format_hash(cfg.config_hash) +
                    "\n# comparison: closed_form vs oracle\n";
  out += "# units: hbar=" + detail::format_number(cfg.units.hbar) +
         " kb=" + detail::format_number(cfg.units.kb) + "\n";
  out += "entry,closed_form,oracle,abs_diff\n";
  for (int i = 0; i < closed.rows(); ++i) {
    for (int j = i; j < closed.cols(); ++j) {
      out += "D_" + detail::quadrature_label(i) + detail::quadrature_label(j);
      out += "," + detail::format_number(closed(i, j));
      out += "," + detail::format_number(oracle(i, j));
      out += "," + detail::format_number(std::abs(closed(i, j) - oracle(i, j)));
      out += "\n";
    }
  }
  return out;
}

/// Einstein-relation CSV, one row per oscillator.
inline std::string run_einstein(const RunConfig& cfg) {
  std::string out = "# config_hash: " + detail::format_hash(cfg.config_hash) +
                    "\n";
  out += "# units: hbar=" + detail::format_number(cfg.units.hbar) +
         " kb=" + detail::format_number(cfg.units.kb) + "\n";
  out +=
      "oscillator,effective_friction,regime_flag,dpp_over_mkT,limit_ratio,"
      "lambda_lower_bound,min_temperature\n";
  for (int k = 0; k < cfg.network.size(); ++k) {
    const EinsteinReport rep =
        einstein_report(cfg.network, cfg.lindblad, cfg.equilibrium, cfg.units,
                        k);
    out += std::to_string(k + 1);
    out += "," + detail::format_number(rep.effective_friction);
    out += rep.regime_flag ? ",true" : ",false";
    out += "," + detail::format_number(rep.dpp_over_mkT);
    out += "," + detail::format_number(rep.limit_ratio);
    out += "," + detail::format_number(rep.lambda_lower_bound);
    out += rep.min_temperature
               ? "," + detail::format_number(*rep.min_temperature)
               : ",unattainable";
    out += "\n";
  }
  return out;
}

struct CheckResult {
  std::string report;
  bool pass = false;
};

/// Constraint + Einstein + Phi/Psi/Gamma report.  `pass` reflects only the
/// three hard inequalities; the positivity eigenvalue and the
/// Phi/Psi/Gamma residuals are informational.
inline CheckResult run_check(const RunConfig& cfg, DiffusionSource source) {
  const int n = cfg.network.size();
  const Eigen::MatrixXd d = assemble_diffusion(cfg.network, cfg.lindblad,
                                               cfg.equilibrium, cfg.units,
                                               source);
  const ConstraintReport constraints =
      verify_cp_constraints(d, cfg.lindblad, cfg.units);

  std::string out = detail::provenance_header(cfg, source);
  out += "model: N=" + std::to_string(n) + "\n";
  int passed = 0;
  for (const ConstraintEntry& e : constraints.entries) {
    passed += e.pass ? 1 : 0;
  }
  out += "constraints: " + std::to_string(constraints.entries.size()) +
         " checked, " + std::to_string(passed) + " passed\n";
  for (const ConstraintEntry& e : constraints.entries) {
    out += "  constr" + std::to_string(e.constraint) + " pair (" +
           std::to_string(e.k + 1) + "," + std::to_string(e.j + 1) +
           "): lhs=" + detail::format_number(e.lhs) +
           " rhs=" + detail::format_number(e.rhs) +
           " margin=" + detail::format_number(e.margin) +
           (e.pass ? " PASS" : " FAIL") + "\n";
  }
  out += "diffusion_min_eigenvalue: " +
         detail::format_number(constraints.min_diffusion_eigenvalue) +
         (constraints.diffusion_psd ? " (psd)" : " (not psd)") +
         " [informational]\n";
  for (int k = 0; k < n; ++k) {
    const EinsteinReport rep =
        einstein_report(cfg.network, cfg.lindblad, cfg.equilibrium, cfg.units,
                        k);
    out += "einstein oscillator " + std::to_string(k + 1) +
           ": effective_friction=" +
           detail::format_number(rep.effective_friction) +
           " regime=" + (rep.regime_flag ? "high-temperature" : "finite-temperature") +
           " limit_ratio=" + detail::format_number(rep.limit_ratio) +
           " lambda_lower_bound=" +
           detail::format_number(rep.lambda_lower_bound) + " min_temperature=" +
           (rep.min_temperature
                ? detail::format_number(*rep.min_temperature)
                : std::string("unattainable")) +
           "\n";
  }
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const PhiPsiGammaReport rep = phi_psi_gamma_residuals(
          cfg.network, cfg.lindblad, cfg.equilibrium, cfg.units, k, j);
      out += "phi_psi_gamma pair (" + std::to_string(k + 1) + "," +
             std::to_string(j + 1) +
             "): phi=" + detail::format_number(rep.phi) +
             " psi=" + detail::format_number(rep.psi) +
             " gamma_kj=" + detail::format_number(rep.gamma_kj) +
             " gamma_jk=" + detail::format_number(rep.gamma_jk) +
             " residuals=[" + detail::format_number(rep.residuals[0]) + "," +
             detail::format_number(rep.residuals[1]) + "," +
             detail::format_number(rep.residuals[2]) + "," +
             detail::format_number(rep.residuals[3]) + "] [diagnostic]\n";
    }
  }
  out += std::string("result: ") +
         (constraints.all_pass() ? "PASS" : "FAIL") + "\n";
  return {out, constraints.all_pass()};
}

}  // namespace lindgauss
