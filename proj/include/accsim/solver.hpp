#pragma once

#include <span>
#include <vector>

#include "accsim/capacity.hpp"
#include "accsim/grid.hpp"

namespace accsim {

/// Piecewise-constant cell means of the traffic density with its current time.
struct DensityField {
  std::vector<double> values;
  double time = 0;
};

inline double lwr_flux(double rho) { return rho * (1.0 - rho); }
inline double lwr_flux_deriv(double rho) { return 1.0 - 2.0 * rho; }

/// max |f| and max |f'| over the nominal density range [0, 1].
constexpr double kFluxSup = 0.25;
constexpr double kFluxDerivSup = 1.0;

double mass(const DensityField& rho, const Grid& grid);

/// Periodic total variation sum_i |rho_i - rho_{i-1}| including the wrap term.
double total_variation(const DensityField& rho);

/// dt = cfl_factor * dx / (sup|a| * sup|f'|). Rejects sup|a| = 0.
double cfl_timestep(const CapacityField& capacity, const Grid& grid, double cfl_factor);

/// One Lax-Friedrichs step with periodic indexing:
///   out_i = (rho_{i+1} + rho_{i-1}) / 2
///           - (dt/dx)/2 * (a_{i+1} f(rho_{i+1}) - a_{i-1} f(rho_{i-1}))
void lax_friedrichs_step(std::span<const double> rho, std::span<const double> capacity,
                         double dt_over_dx, std::span<double> out);

/// Per-run diagnostics accumulated across evolve() calls of one path. The
/// Lax-Friedrichs L-infinity and total-variation estimates are checked per
/// step when check_scheme_bounds is set (intended for smooth capacity mode).
struct EvolveMonitor {
  bool check_scheme_bounds = false;
  double range_tol = 1e-9;

  // reference data fixed at the start of the run
  double initial_linf = 0;
  double start_time = 0;
  double initial_mass = 0;
  double last_mass = 0;
  // running L-infinity allowance: initial_linf plus the accumulated
  // dt * sup|a'| * sup|f| of every step taken (capacity may change between
  // evolve calls when accidents come and go)
  double linf_allowance = 0;

  long long steps = 0;
  double max_step_mass_drift = 0;   // relative, per step
  double max_range_excess = 0;      // distance of any rho_i outside [0, 1]
  double max_step_tv_rate = 0;      // max |TV_{j+1} - TV_j| / dt
  long long linf_violations = 0;
  long long tv_violations = 0;

  void reset_reference(const DensityField& rho0, const Grid& grid);
  double run_mass_drift() const;  // relative, whole run
  bool range_ok() const { return max_range_excess <= range_tol; }
};

/// Advances the density to t_target with repeated CFL-limited steps and a
/// shortened final step landing exactly on t_target. Capacity is frozen for
/// the whole call.
void evolve(DensityField& rho, const CapacityField& capacity, const Grid& grid,
            double t_target, double cfl_factor, EvolveMonitor* monitor = nullptr);

}  // namespace accsim
