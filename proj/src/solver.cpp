#include "accsim/solver.hpp"

#include <algorithm>
#include <cmath>

#include "accsim/errors.hpp"

namespace accsim {

double mass(const DensityField& rho, const Grid& grid) {
  double sum = 0;
  for (double v : rho.values) sum += v;
  return sum * grid.dx;
}

double total_variation(const DensityField& rho) {
  const auto& v = rho.values;
  const std::size_t n = v.size();
  double tv = std::abs(v.front() - v.back());
  for (std::size_t i = 1; i < n; ++i) tv += std::abs(v[i] - v[i - 1]);
  return tv;
}

double cfl_timestep(const CapacityField& capacity, const Grid& grid, double cfl_factor) {
  if (!(capacity.sup_abs > 0)) throw InvalidStateError("cfl_timestep: sup|a| must be positive");
  return cfl_factor * grid.dx / (capacity.sup_abs * kFluxDerivSup);
}

void lax_friedrichs_step(std::span<const double> rho, std::span<const double> capacity,
                         double dt_over_dx, std::span<double> out) {
  const std::size_t n = rho.size();
  const double half_lambda = 0.5 * dt_over_dx;
  auto update = [&](std::size_t i, std::size_t im, std::size_t ip) {
    out[i] = 0.5 * (rho[ip] + rho[im]) -
             half_lambda * (capacity[ip] * lwr_flux(rho[ip]) - capacity[im] * lwr_flux(rho[im]));
  };
  update(0, n - 1, 1 % n);
  for (std::size_t i = 1; i + 1 < n; ++i) update(i, i - 1, i + 1);
  if (n > 1) update(n - 1, n - 2, 0);
}

void EvolveMonitor::reset_reference(const DensityField& rho0, const Grid& grid) {
  initial_linf = 0;
  for (double v : rho0.values) initial_linf = std::max(initial_linf, std::abs(v));
  start_time = rho0.time;
  initial_mass = mass(rho0, grid);
  last_mass = initial_mass;
  linf_allowance = initial_linf;
}

double EvolveMonitor::run_mass_drift() const {
  return std::abs(last_mass - initial_mass) / std::max(std::abs(initial_mass), 1e-300);
}

namespace {

double linf_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double range_excess(const std::vector<double>& v) {
  double e = 0;
  for (double x : v) {
    if (x < 0) e = std::max(e, -x);
    if (x > 1) e = std::max(e, x - 1.0);
  }
  return e;
}

}  // namespace

void evolve(DensityField& rho, const CapacityField& capacity, const Grid& grid,
            double t_target, double cfl_factor, EvolveMonitor* monitor) {
  const double dt_cfl = cfl_timestep(capacity, grid, cfl_factor);
  // Remainders below roundoff scale are absorbed instead of triggering an
  // extra averaging step.
  const double time_eps = 1e-12 * std::max(1.0, std::abs(t_target));
  if (t_target - rho.time < -time_eps)
    throw InvalidStateError("evolve: target time lies in the past");

  std::vector<double> scratch(rho.values.size());
  double mass_prev = 0, tv_prev = 0;
  if (monitor) {
    mass_prev = mass(rho, grid);
    tv_prev = total_variation(rho);
  }

  while (t_target - rho.time > time_eps) {
    const double remaining = t_target - rho.time;
    const bool last = remaining <= dt_cfl;
    const double dt = last ? remaining : dt_cfl;

    lax_friedrichs_step(rho.values, capacity.values, dt / grid.dx, scratch);
    rho.values.swap(scratch);
    rho.time = last ? t_target : rho.time + dt;

    if (monitor) {
      monitor->steps += 1;
      const double mass_now = mass(rho, grid);
      const double drift = std::abs(mass_now - mass_prev) / std::max(std::abs(mass_prev), 1e-300);
      monitor->max_step_mass_drift = std::max(monitor->max_step_mass_drift, drift);
      mass_prev = mass_now;
      monitor->last_mass = mass_now;
      monitor->max_range_excess = std::max(monitor->max_range_excess, range_excess(rho.values));

      if (monitor->check_scheme_bounds) {
        const double slack = 1e-12;
        const double linf = linf_norm(rho.values);
        monitor->linf_allowance += dt * capacity.deriv_sup * kFluxSup;
        if (linf > monitor->linf_allowance * (1.0 + slack) + slack) monitor->linf_violations += 1;

        const double tv_now = total_variation(rho);
        const double tv_bound = (1.0 + dt * capacity.deriv_sup * kFluxDerivSup) * tv_prev +
                                dt * 1.5 * kFluxSup * capacity.second_deriv_l1;
        if (tv_now > tv_bound * (1.0 + slack) + slack) monitor->tv_violations += 1;
        monitor->max_step_tv_rate = std::max(monitor->max_step_tv_rate, std::abs(tv_now - tv_prev) / dt);
        tv_prev = tv_now;
      }
    }
  }
  rho.time = t_target;
}

}  // namespace accsim
