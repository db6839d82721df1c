// Command-line front end: check / diffusion / einstein / evolve / sweep.
//
// Exit codes: 0 success, 2 configuration error, 3 physics error (unphysical
// parameters or no stable steady state; the message carries the offending
// eigenvalue), 4 constraint failure reported by `check`.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lindgauss/run.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string output_path;
  std::string source_name = "oracle";
  double tmax = 0.0;
  double dt = 0.0;
  bool has_tmax = false;
  bool has_dt = false;
  int threads = 1;
};

void add_io_options(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--config", opts->config_path, "JSON configuration file")
      ->required();
  cmd->add_option("--output", opts->output_path,
                  "Output file (default: stdout)");
}

void add_source_option(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--diffusion-source", opts->source_name,
                  "Diffusion matrix source")
      ->check(CLI::IsMember({"oracle", "closed-form"}));
}

void add_grid_options(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--tmax", opts->tmax, "Final time (overrides grid.tmax)")
      ->each([opts](const std::string&) { opts->has_tmax = true; });
  cmd->add_option("--dt", opts->dt, "Time step (overrides grid.dt)")
      ->each([opts](const std::string&) { opts->has_dt = true; });
  cmd->add_option("--threads", opts->threads, "Worker threads (default 1)")
      ->check(CLI::Range(1, 256));
}

int emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << output_path << "'\n";
    return 1;
  }
  out << content;
  if (!out) {
    std::cerr << "error: failed writing '" << output_path << "'\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coupled harmonic oscillator networks under Lindblad dissipation: "
      "diffusion coefficients, constraint checks, covariance evolution, and "
      "entanglement sweeps"};
  app.require_subcommand(1);

  CommonOptions opts;
  CLI::App* check = app.add_subcommand(
      "check", "Constraint, Einstein, and coefficient-system reports");
  add_io_options(check, &opts);
  add_source_option(check, &opts);

  CLI::App* diffusion = app.add_subcommand(
      "diffusion", "Closed-form vs oracle diffusion comparison CSV");
  add_io_options(diffusion, &opts);

  CLI::App* einstein =
      app.add_subcommand("einstein", "Einstein-relation diagnostics CSV");
  add_io_options(einstein, &opts);

  CLI::App* evolve = app.add_subcommand(
      "evolve", "Covariance and log-negativity trajectory CSV");
  add_io_options(evolve, &opts);
  add_source_option(evolve, &opts);
  add_grid_options(evolve, &opts);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sudden-death summary CSV over the zeta grid");
  add_io_options(sweep, &opts);
  add_source_option(sweep, &opts);
  add_grid_options(sweep, &opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ifstream config_file(opts.config_path, std::ios::binary);
  if (!config_file) {
    std::cerr << "config error: cannot read '" << opts.config_path << "'\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << config_file.rdbuf();
  const std::string config_text = buffer.str();

  const lindgauss::DiffusionSource source =
      opts.source_name == "oracle" ? lindgauss::DiffusionSource::oracle
                                   : lindgauss::DiffusionSource::closed_form;
  const std::optional<double> tmax =
      opts.has_tmax ? std::optional<double>(opts.tmax) : std::nullopt;
  const std::optional<double> dt =
      opts.has_dt ? std::optional<double>(opts.dt) : std::nullopt;

  try {
    const lindgauss::RunConfig cfg = lindgauss::parse_config(config_text);
    if (check->parsed()) {
      const lindgauss::CheckResult result = lindgauss::run_check(cfg, source);
      const int io = emit(opts.output_path, result.report);
      if (io != 0) return io;
      return result.pass ? 0 : 4;
    }
    if (diffusion->parsed()) {
      return emit(opts.output_path, lindgauss::run_diffusion_report(cfg));
    }
    if (einstein->parsed()) {
      return emit(opts.output_path, lindgauss::run_einstein(cfg));
    }
    if (evolve->parsed()) {
      return emit(opts.output_path,
                  lindgauss::run_evolve(cfg, source, opts.threads, tmax, dt));
    }
    if (sweep->parsed()) {
      return emit(opts.output_path,
                  lindgauss::run_sweep(cfg, source, opts.threads, tmax, dt));
    }
    std::cerr << "error: no subcommand dispatched\n";
    return 1;
  } catch (const lindgauss::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const lindgauss::NonHurwitzError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const lindgauss::PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
