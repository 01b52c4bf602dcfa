#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "accsim/commands.hpp"
#include "accsim/errors.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> beta;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "configuration file (JSON)")->required();
  cmd->add_option("--seed", ov.seed, "override the master seed");
  cmd->add_option("--samples", ov.samples, "override the path/sample count");
  cmd->add_option("--beta", ov.beta, "override the position-mixture weight");
  cmd->add_option("--out", ov.out_dir, "override the output directory");
  cmd->add_option("--threads", ov.threads, "worker count (0 = hardware)");
}

accsim::SimConfig load_with_overrides(const Overrides& ov) {
  accsim::SimConfig cfg = accsim::load_config(ov.config_path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.samples) cfg.samples = *ov.samples;
  if (ov.beta) cfg.path.beta = *ov.beta;
  if (ov.out_dir) cfg.output.directory = *ov.out_dir;
  if (ov.threads) cfg.threads = *ov.threads;
  accsim::validate(cfg);
  return cfg;
}

int run_simulate(const Overrides& ov) {
  const accsim::SimConfig cfg = load_with_overrides(ov);
  const accsim::SimulateReport report = accsim::cmd_simulate(cfg);
  std::cout << "paths=" << report.paths << " jumps=" << report.jumps
            << " max_run_mass_drift=" << report.max_run_mass_drift
            << " max_step_mass_drift=" << report.max_step_mass_drift
            << " max_range_excess=" << report.max_range_excess << '\n';
  if (report.scheme_bound_violations > 0) {
    std::cerr << "error: " << report.scheme_bound_violations << " scheme bound violations\n";
    return 2;
  }
  if (report.discarded_paths > 0) {
    std::cerr << "error: " << report.discarded_paths
              << " paths discarded (rate exceeded the thinning bound)\n";
    return 2;
  }
  if (!report.valid) {
    std::cerr << "error: density left [0,1] beyond tolerance; run marked invalid\n";
    return 2;
  }
  return 0;
}

int run_first_jump(const Overrides& ov) {
  const accsim::SimConfig cfg = load_with_overrides(ov);
  const accsim::FirstJumpReport report = accsim::cmd_first_jump(cfg);
  std::cout << "samples=" << report.samples << " censored=" << report.censored
            << " ks=" << report.ks << '\n';
  if (report.low_sample)
    std::cout << "note: fewer than 30 uncensored samples; KS value is unreliable\n";
  return 0;
}

int run_positions(const Overrides& ov) {
  const accsim::SimConfig cfg = load_with_overrides(ov);
  const accsim::PositionsReport report = accsim::cmd_positions(cfg);
  std::cout << "samples=" << report.samples << " censored=" << report.censored << '\n';
  return 0;
}

int run_convergence(const Overrides& ov) {
  const accsim::SimConfig cfg = load_with_overrides(ov);
  const accsim::ConvergenceReport report = accsim::cmd_convergence(cfg);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    std::cout << "dx=" << report.rows[i].dx;
    if (i >= 1) std::cout << " l1_diff=" << report.rows[i].l1_diff;
    if (i >= 2) std::cout << " order=" << report.rows[i].order;
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic traffic-accident simulator on a periodic road"};
  app.require_subcommand(1);

  Overrides ov;
  CLI::App* simulate = app.add_subcommand("simulate", "simulate jump chains and snapshots");
  CLI::App* first_jump = app.add_subcommand("first-jump", "first jump time distribution");
  CLI::App* positions = app.add_subcommand("positions", "first accident position histogram");
  CLI::App* convergence = app.add_subcommand("convergence", "grid refinement study");
  for (CLI::App* cmd : {simulate, first_jump, positions, convergence})
    add_common_options(cmd, ov);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(ov);
    if (first_jump->parsed()) return run_first_jump(ov);
    if (positions->parsed()) return run_positions(ov);
    if (convergence->parsed()) return run_convergence(ov);
  } catch (const accsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
