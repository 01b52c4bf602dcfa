#pragma once

#include <span>
#include <vector>

#include "accsim/capacity.hpp"
#include "accsim/grid.hpp"
#include "accsim/random.hpp"
#include "accsim/solver.hpp"

namespace accsim {

/// State of the jump process: slot-indexed accident list plus the density.
/// Slots are numbered from 1 in logs and outputs; a slot is active iff its
/// drop is positive.
struct ModelState {
  std::vector<AccidentParams> accidents;
  DensityField rho;

  double time() const { return rho.time; }
};

struct RateParams {
  double flux = 0;        // intensity scale of flux-caused accidents
  double upjump = 0;      // intensity scale per unit of positive density jump
  double resolution = 0;  // resolution rate per active accident
};

/// Uniform accident-size distribution on [min, max].
struct SizeDistribution {
  double min = 0;
  double max = 0;
};

/// Finite discrete capacity-drop distribution {(value_k, weight_k)}.
struct CapacityDropDistribution {
  std::vector<double> values;
  std::vector<double> weights;  // sum to 1
};

/// Flux part of the position measure: piecewise-uniform density with cell
/// weights w_i = a_i f(rho_i) / C_F, so that sum_i w_i dx = 1.
struct FluxMeasure {
  std::vector<double> cell_weights;
  double total_flux = 0;  // C_F = sum_i a_i f(rho_i) dx

  bool degenerate() const { return !(total_flux > 0); }
};

/// Up-jump part: purely atomic with atom (rho_i - rho_{i-1})_+ at the left
/// interface of cell i (periodic).
struct UpjumpMeasure {
  std::vector<double> atoms;
  double total = 0;

  bool degenerate() const { return !(total > 0); }
};

/// Mixture beta * flux + (1 - beta) * atoms, after reassigning the mass of a
/// degenerate component to the other one.
struct PositionMeasure {
  FluxMeasure flux;
  UpjumpMeasure upjump;
  double beta_effective = 0;
};

/// Total discrete flux integral C_F = sum_i a_i f(rho_i) dx.
double total_flux_integral(const ModelState& state, const CapacityField& capacity,
                           const Grid& grid);

/// Normalized flux position measure. Throws ZeroFluxError if C_F = 0.
FluxMeasure flux_measure(const ModelState& state, const CapacityField& capacity,
                         const Grid& grid);

UpjumpMeasure upjump_measure(const DensityField& rho);

/// Builds the mixture; throws DegenerateStateError if both parts carry no
/// mass (only possible at rho = 0 or rho = 1).
PositionMeasure position_measure(const ModelState& state, const CapacityField& capacity,
                                 const Grid& grid, double beta);

/// Draws the component, then a cell (uniform inside) or an interface atom
/// (exact interface coordinate).
double sample_position(const PositionMeasure& measure, const Grid& grid, RandomStream& rng);

/// Accident-creation intensity lambda_A = lambda_F C_F + lambda_D D+.
double accident_intensity(const ModelState& state, const CapacityField& capacity,
                          const Grid& grid, const RateParams& rates);

/// Full jump rate psi = lambda_F C_F + lambda_D D+ + lambda_R N.
double jump_rate(const ModelState& state, const CapacityField& capacity, const Grid& grid,
                 const RateParams& rates);

int active_count(std::span<const AccidentParams> accidents);

/// Smallest inactive slot, numbered from 1. Slots are reused after resolution.
int first_free_slot(std::span<const AccidentParams> accidents);

enum class JumpKind { kInit, kAccident, kResolution };

struct JumpOutcome {
  JumpKind kind = JumpKind::kAccident;
  int slot = 0;  // 1-based
  AccidentParams params;
};

double sample_size(const SizeDistribution& dist, RandomStream& rng);
double sample_drop(const CapacityDropDistribution& dist, RandomStream& rng);

/// Applies one draw of the jump kernel in place: either a new accident in the
/// first free slot (position ~ mixture, size ~ size dist, drop ~ drop dist)
/// or the resolution of a uniformly chosen active accident. The density is
/// not touched. Throws NoEventError when neither branch has mass.
JumpOutcome sample_jump(ModelState& state, const CapacityField& capacity, const Grid& grid,
                        double beta, const RateParams& rates, const SizeDistribution& size_dist,
                        const CapacityDropDistribution& drop_dist, RandomStream& rng);

}  // namespace accsim
