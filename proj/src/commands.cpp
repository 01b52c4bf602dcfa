#include "accsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "accsim/ensemble.hpp"
#include "accsim/errors.hpp"
#include "accsim/stats.hpp"

namespace accsim {

SimulateReport cmd_simulate(const SimConfig& cfg) {
  const std::vector<PathResult> paths =
      run_paths(cfg.path, cfg.seed, cfg.samples, cfg.threads);

  auto chain_os = open_output(cfg.output.directory / "jump_chain.csv");
  write_jump_chain_csv(chain_os, paths);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    for (const Snapshot& snap : paths[p].snapshots) {
      const std::string name =
          "snapshot_p" + std::to_string(p) + "_t" + format_double(snap.time) + ".csv";
      auto os = open_output(cfg.output.directory / name);
      write_snapshot_csv(os, cfg.path.grid, snap.values);
    }
  }

  SimulateReport report;
  report.paths = static_cast<int>(paths.size());
  for (const PathResult& path : paths) {
    report.jumps += static_cast<long long>(path.chain.size()) - 1;
    report.max_run_mass_drift = std::max(report.max_run_mass_drift, path.monitor.run_mass_drift());
    report.max_step_mass_drift =
        std::max(report.max_step_mass_drift, path.monitor.max_step_mass_drift);
    report.max_range_excess = std::max(report.max_range_excess, path.monitor.max_range_excess);
    report.scheme_bound_violations += path.monitor.linf_violations + path.monitor.tv_violations;
    report.discarded_paths += path.bound_violation ? 1 : 0;
    report.valid = report.valid && path.monitor.range_ok();
  }
  return report;
}

namespace {

std::vector<double> uncensored_times(const std::vector<FirstJumpSample>& samples) {
  std::vector<double> times;
  for (const FirstJumpSample& s : samples)
    if (!s.censored) times.push_back(s.time);
  return times;
}

}  // namespace

FirstJumpReport cmd_first_jump(const SimConfig& cfg) {
  const std::vector<FirstJumpSample> samples =
      first_jump_ensemble(cfg.path, cfg.seed, cfg.samples);
  const FirstJumpLaw law = analytic_first_jump_law(cfg.path);

  {
    auto os = open_output(cfg.output.directory / "first_jump_samples.csv");
    write_first_jump_samples_csv(os, samples);
  }
  {
    auto os = open_output(cfg.output.directory / "first_jump_cdf.csv");
    write_table_csv(os, law.cdf, "F");
  }
  {
    auto os = open_output(cfg.output.directory / "first_jump_pdf.csv");
    write_table_csv(os, law.pdf, "g");
  }

  FirstJumpReport report;
  report.samples = static_cast<int>(samples.size());
  const std::vector<double> times = uncensored_times(samples);
  report.censored = report.samples - static_cast<int>(times.size());
  report.low_sample = times.size() < 30;
  if (times.empty()) {
    report.ks = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  {
    auto os = open_output(cfg.output.directory / "first_jump_ecdf.csv");
    write_table_csv(os, ecdf(times), "F");
  }
  {
    const Histogram hist =
        histogram(times, uniform_bin_edges(0.0, cfg.path.horizon, cfg.output.histogram_bins));
    auto os = open_output(cfg.output.directory / "first_jump_histogram.csv");
    write_histogram_csv(os, hist);
  }
  report.ks = ks_distance(times, law.cdf);
  return report;
}

PositionsReport cmd_positions(const SimConfig& cfg) {
  const std::vector<FirstJumpSample> samples =
      first_jump_ensemble(cfg.path, cfg.seed, cfg.samples);

  std::vector<double> positions;
  for (const FirstJumpSample& s : samples)
    if (!s.censored) positions.push_back(s.accident.position);

  {
    auto os = open_output(cfg.output.directory / "first_position_samples.csv");
    write_first_jump_samples_csv(os, samples);
  }
  {
    const double l = cfg.path.grid.half_length;
    const Histogram hist =
        histogram(positions, uniform_bin_edges(-l, l, cfg.output.histogram_bins));
    auto os = open_output(cfg.output.directory / "first_position_histogram.csv");
    write_histogram_csv(os, hist);
  }

  PositionsReport report;
  report.samples = static_cast<int>(samples.size());
  report.censored = report.samples - static_cast<int>(positions.size());
  return report;
}

namespace {

std::vector<double> restrict_to_coarse(const std::vector<double>& fine) {
  std::vector<double> coarse(fine.size() / 2);
  for (std::size_t i = 0; i < coarse.size(); ++i)
    coarse[i] = 0.5 * (fine[2 * i] + fine[2 * i + 1]);
  return coarse;
}

}  // namespace

ConvergenceReport cmd_convergence(const SimConfig& cfg) {
  const PathConfig& base = cfg.path;
  constexpr int kLevels = 4;

  ConvergenceReport report;
  std::vector<std::vector<double>> solutions;
  std::vector<double> init = base.initial_density;
  for (int level = 0; level < kLevels; ++level) {
    const Grid grid = Grid::make(base.grid.half_length, base.grid.n_cells << level);
    const CapacityField capacity = total_capacity(base.road, {}, base.mollifier, grid);
    DensityField rho{init, 0.0};
    evolve(rho, capacity, grid, base.horizon, base.cfl_factor, nullptr);
    solutions.push_back(std::move(rho.values));
    report.rows.push_back(ConvergenceRow{grid.dx, 0, 0});

    // initial datum for the next level: re-evaluate the profile when its
    // functional form is known, otherwise prolong the piecewise constants
    const Grid finer_grid = Grid::make(base.grid.half_length, base.grid.n_cells << (level + 1));
    if (base.initial_profile) {
      init = cell_means(*base.initial_profile, finer_grid);
    } else {
      std::vector<double> finer(init.size() * 2);
      for (std::size_t i = 0; i < init.size(); ++i) finer[2 * i] = finer[2 * i + 1] = init[i];
      init = std::move(finer);
    }
  }

  for (int level = 1; level < kLevels; ++level) {
    // compare each pair on the coarser grid of the two
    const std::vector<double> restricted = restrict_to_coarse(solutions[level]);
    const std::vector<double>& prev = solutions[level - 1];
    double diff = 0;
    for (std::size_t i = 0; i < prev.size(); ++i) diff += std::abs(prev[i] - restricted[i]);
    diff *= report.rows[level - 1].dx;
    report.rows[level].l1_diff = diff;
    if (level >= 2 && diff > 0)
      report.rows[level].order = std::log2(report.rows[level - 1].l1_diff / diff);
  }

  auto os = open_output(cfg.output.directory / "convergence.csv");
  write_convergence_csv(os, report.rows);
  return report;
}

}  // namespace accsim
