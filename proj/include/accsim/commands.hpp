#pragma once

#include <vector>

#include "accsim/config.hpp"
#include "accsim/csv.hpp"

namespace accsim {

struct SimulateReport {
  int paths = 0;
  long long jumps = 0;  // accident + resolution records over all paths
  double max_run_mass_drift = 0;
  double max_step_mass_drift = 0;
  double max_range_excess = 0;
  long long scheme_bound_violations = 0;
  int discarded_paths = 0;  // exact engine bound violations
  bool valid = true;        // range diagnostics within tolerance
};

/// Runs the configured ensemble and writes jump_chain.csv plus one snapshot
/// file per (path, requested time).
SimulateReport cmd_simulate(const SimConfig& cfg);

struct FirstJumpReport {
  int samples = 0;
  int censored = 0;
  double ks = 0;  // NaN when every path was censored
  bool low_sample = false;
};

/// Samples the first jump time of every path, writes the samples, the ECDF,
/// the analytic CDF/pdf tables and a time histogram, and reports the
/// Kolmogorov-Smirnov distance between the ECDF and the analytic CDF.
FirstJumpReport cmd_first_jump(const SimConfig& cfg);

struct PositionsReport {
  int samples = 0;
  int censored = 0;
};

/// Samples the position of the first accident of every path and writes the
/// samples plus the position histogram.
PositionsReport cmd_positions(const SimConfig& cfg);

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

/// Deterministic grid-refinement study: solves on the configured grid and
/// three dyadic refinements, reporting L1 differences between consecutive
/// levels and the empirical orders.
ConvergenceReport cmd_convergence(const SimConfig& cfg);

}  // namespace accsim
