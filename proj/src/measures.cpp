#include "accsim/measures.hpp"

#include <algorithm>
#include <cmath>

#include "accsim/errors.hpp"

namespace accsim {

double total_flux_integral(const ModelState& state, const CapacityField& capacity,
                           const Grid& grid) {
  double sum = 0;
  for (int i = 0; i < grid.n_cells; ++i)
    sum += capacity.values[i] * lwr_flux(state.rho.values[i]);
  return sum * grid.dx;
}

FluxMeasure flux_measure(const ModelState& state, const CapacityField& capacity,
                         const Grid& grid) {
  FluxMeasure m;
  m.total_flux = total_flux_integral(state, capacity, grid);
  if (m.degenerate()) throw ZeroFluxError("flux_measure: total flux integral is zero");
  m.cell_weights.resize(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i)
    m.cell_weights[i] = capacity.values[i] * lwr_flux(state.rho.values[i]) / m.total_flux;
  return m;
}

UpjumpMeasure upjump_measure(const DensityField& rho) {
  const auto& v = rho.values;
  const std::size_t n = v.size();
  UpjumpMeasure m;
  m.atoms.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = v[i] - v[i == 0 ? n - 1 : i - 1];
    const double atom = diff > 0 ? diff : 0.0;
    m.atoms[i] = atom;
    m.total += atom;
  }
  return m;
}

PositionMeasure position_measure(const ModelState& state, const CapacityField& capacity,
                                 const Grid& grid, double beta) {
  PositionMeasure m;
  m.upjump = upjump_measure(state.rho);
  m.flux.total_flux = total_flux_integral(state, capacity, grid);
  if (!m.flux.degenerate()) {
    m.flux.cell_weights.resize(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i)
      m.flux.cell_weights[i] =
          capacity.values[i] * lwr_flux(state.rho.values[i]) / m.flux.total_flux;
  }

  if (m.flux.degenerate() && m.upjump.degenerate())
    throw DegenerateStateError("position_measure: both mixture components are degenerate");

  // A degenerate component hands its mixture mass to the other one; on a
  // periodic grid a constant discrete profile has no up-jump mass even
  // though rho > 0, so the fallback is reachable in normal runs.
  m.beta_effective = beta;
  if (m.upjump.degenerate()) m.beta_effective = 1.0;
  if (m.flux.degenerate()) m.beta_effective = 0.0;
  return m;
}

double sample_position(const PositionMeasure& measure, const Grid& grid, RandomStream& rng) {
  if (rng.canonical() < measure.beta_effective) {
    if (measure.flux.degenerate())
      throw ZeroFluxError("sample_position: flux component is degenerate");
    const std::size_t cell = rng.pick_weighted(measure.flux.cell_weights,
                                               1.0 / grid.dx);  // weights sum to 1/dx
    const double left = grid.interface_coord(static_cast<int>(cell));
    return left + rng.canonical() * grid.dx;
  }
  if (measure.upjump.degenerate())
    throw DegenerateStateError("sample_position: up-jump component is degenerate");
  const std::size_t atom = rng.pick_weighted(measure.upjump.atoms, measure.upjump.total);
  return grid.interface_coord(static_cast<int>(atom));
}

double accident_intensity(const ModelState& state, const CapacityField& capacity,
                          const Grid& grid, const RateParams& rates) {
  const double flux_part = total_flux_integral(state, capacity, grid);
  const double upjump_part = upjump_measure(state.rho).total;
  return rates.flux * std::max(flux_part, 0.0) + rates.upjump * upjump_part;
}

double jump_rate(const ModelState& state, const CapacityField& capacity, const Grid& grid,
                 const RateParams& rates) {
  return accident_intensity(state, capacity, grid, rates) +
         rates.resolution * active_count(state.accidents);
}

int active_count(std::span<const AccidentParams> accidents) {
  int n = 0;
  for (const auto& a : accidents)
    if (a.drop > 0) ++n;
  return n;
}

int first_free_slot(std::span<const AccidentParams> accidents) {
  for (std::size_t i = 0; i < accidents.size(); ++i)
    if (!(accidents[i].drop > 0)) return static_cast<int>(i) + 1;
  return static_cast<int>(accidents.size()) + 1;
}

double sample_size(const SizeDistribution& dist, RandomStream& rng) {
  return rng.uniform(dist.min, dist.max);
}

double sample_drop(const CapacityDropDistribution& dist, RandomStream& rng) {
  const std::size_t k = rng.pick_weighted(dist.weights, 1.0);
  return dist.values[k];
}

JumpOutcome sample_jump(ModelState& state, const CapacityField& capacity, const Grid& grid,
                        double beta, const RateParams& rates, const SizeDistribution& size_dist,
                        const CapacityDropDistribution& drop_dist, RandomStream& rng) {
  const double lambda_accident = accident_intensity(state, capacity, grid, rates);
  const int n_active = active_count(state.accidents);
  const double lambda_resolve = rates.resolution * n_active;
  const double total = lambda_accident + lambda_resolve;
  if (!(total > 0)) throw NoEventError("sample_jump: no accident mass and no active accident");

  JumpOutcome outcome;
  if (rng.canonical() < lambda_accident / total) {
    const PositionMeasure pos = position_measure(state, capacity, grid, beta);
    AccidentParams acc;
    acc.position = sample_position(pos, grid, rng);
    acc.size = sample_size(size_dist, rng);
    acc.drop = sample_drop(drop_dist, rng);

    const int slot = first_free_slot(state.accidents);
    if (static_cast<std::size_t>(slot) > state.accidents.size())
      state.accidents.resize(slot);
    state.accidents[slot - 1] = acc;
    outcome = JumpOutcome{JumpKind::kAccident, slot, acc};
  } else {
    // Uniform pick among active slots; only the chosen coordinate changes.
    const int target = std::min(n_active - 1, static_cast<int>(rng.canonical() * n_active));
    int seen = 0;
    int slot = 0;
    for (std::size_t i = 0; i < state.accidents.size(); ++i) {
      if (state.accidents[i].drop > 0 && seen++ == target) {
        slot = static_cast<int>(i) + 1;
        break;
      }
    }
    state.accidents[slot - 1].drop = 0;
    outcome = JumpOutcome{JumpKind::kResolution, slot, state.accidents[slot - 1]};
  }
  return outcome;
}

}  // namespace accsim
