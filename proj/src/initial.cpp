#include "accsim/initial.hpp"

#include <algorithm>
#include <cmath>

#include "accsim/capacity.hpp"

namespace accsim {

double InitialProfile::value_at(double x, double half_length) const {
  const double period = 2.0 * half_length;
  double y = x - period * std::floor((x + half_length) / period);
  if (y >= half_length) y = -half_length;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints.begin());
  if (idx > 0) idx -= 1;
  return values[std::min(idx, values.size() - 1)];
}

std::vector<double> cell_means(const InitialProfile& profile, const Grid& grid) {
  std::vector<double> means(grid.n_cells);
  if (profile.values.size() == 1 && profile.smooth_epsilon <= 0) {
    std::fill(means.begin(), means.end(), profile.values.front());
    return means;
  }
  if (profile.smooth_epsilon <= 0) {
    // overlap integral of the step function over each cell; cells covered by
    // a single segment take its value exactly
    for (int i = 0; i < grid.n_cells; ++i) {
      const double xl = grid.interface_coord(i);
      const double xr = grid.interface_coord(i + 1);
      double acc = 0;
      int overlaps = 0;
      double last_value = 0;
      for (std::size_t m = 0; m < profile.values.size(); ++m) {
        const double lo = std::max(xl, profile.breakpoints[m]);
        const double hi = std::min(xr, profile.breakpoints[m + 1]);
        if (hi > lo) {
          acc += (hi - lo) * profile.values[m];
          overlaps += 1;
          last_value = profile.values[m];
        }
      }
      means[i] = overlaps == 1 ? last_value : acc / grid.dx;
    }
    return means;
  }
  const Mollifier moll{MollifierMode::kSmooth, profile.smooth_epsilon};
  const int sub = 16;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double xl = grid.interface_coord(i);
    double acc = 0;
    for (int k = 0; k < sub; ++k) {
      const double x = xl + (k + 0.5) * grid.dx / sub;
      acc += mollify([&](double y) { return profile.value_at(y, grid.half_length); }, moll, x);
    }
    means[i] = acc / sub;
  }
  return means;
}

}  // namespace accsim
