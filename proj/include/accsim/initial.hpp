#pragma once

#include <vector>

#include "accsim/grid.hpp"

namespace accsim {

/// Piecewise-constant initial datum on [-L, L], optionally smoothed by the
/// bump kernel. Keeping the functional form (not just sampled cell means)
/// lets refinement studies re-evaluate it on every grid.
struct InitialProfile {
  std::vector<double> breakpoints;  // -L = b_0 < ... < b_M = L
  std::vector<double> values;       // one per segment
  double smooth_epsilon = 0;        // 0: no smoothing

  double value_at(double x, double half_length) const;
};

/// Cell means of the profile: exact overlap integrals for the sharp case,
/// midpoint sub-sampling for the smoothed one.
std::vector<double> cell_means(const InitialProfile& profile, const Grid& grid);

}  // namespace accsim
