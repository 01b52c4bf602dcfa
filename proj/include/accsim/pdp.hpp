#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "accsim/initial.hpp"
#include "accsim/measures.hpp"

namespace accsim {

enum class JumpEngine { kApproximate, kExact };

/// Everything one path needs: deterministic dynamics, jump-rate scales,
/// accident marks, horizon and sampler controls.
struct PathConfig {
  Grid grid;
  RoadProfile road;
  Mollifier mollifier;
  std::vector<double> initial_density;           // cell means at t = 0
  std::optional<InitialProfile> initial_profile;  // functional form, for refinement studies

  double horizon = 0;
  double cfl_factor = 1.0;
  double dt_ref = 0;            // reference step of the adaptive jump search
  double acceptance_ratio = 1;  // in (0, 1]
  double beta = 0;              // mixture weight of the flux position measure

  RateParams rates;
  SizeDistribution size_dist;
  CapacityDropDistribution drop_dist;

  JumpEngine engine = JumpEngine::kApproximate;
  std::optional<double> rate_bound;  // dominating rate for the exact engine

  std::vector<double> snapshot_times;
  bool check_scheme_bounds = false;
  bool capture_record_densities = false;  // test aid for X(t) queries
};

/// One event of the jump chain. The record at index 0 carries the initial
/// state at time 0.
struct JumpRecord {
  double time = 0;
  JumpKind kind = JumpKind::kInit;
  int slot = 0;  // 1-based; 0 for the initial record
  std::vector<AccidentParams> accidents;
};

struct Snapshot {
  double time = 0;
  std::vector<double> values;
};

struct NextJump {
  double time = 0;
  bool censored = false;  // horizon reached with no jump
};

ModelState initial_state(const PathConfig& cfg);
CapacityField rebuild_capacity(const PathConfig& cfg, const ModelState& state);

/// Adaptive-step approximate sampler for the next jump time. Advances the
/// state in place; on success the state sits at the returned (pre-jump) time.
NextJump approx_next_jump(ModelState& state, const CapacityField& capacity,
                          const PathConfig& cfg, RandomStream& rng,
                          EvolveMonitor* monitor = nullptr);

/// Exact thinning sampler with dominating rate `rate_bound`, which must bound
/// the jump rate along the deterministic flow up to the horizon. Throws
/// BoundViolationError when the rate exceeds the bound.
NextJump exact_next_jump(ModelState& state, const CapacityField& capacity,
                         const PathConfig& cfg, double rate_bound, RandomStream& rng,
                         EvolveMonitor* monitor = nullptr);

/// Dominating rate assembled from the discrete scheme estimates: the flux
/// integral is bounded by mass and flux caps, the up-jump mass by half the
/// total-variation growth bound over the remaining horizon.
double suggest_rate_bound(const ModelState& state, const CapacityField& capacity,
                          const Grid& grid, const RateParams& rates, double remaining);

struct PathResult {
  std::vector<JumpRecord> chain;
  std::vector<Snapshot> snapshots;
  std::vector<DensityField> record_densities;  // filled when captured
  EvolveMonitor monitor;
  bool censored_tail = false;    // no jump between the last record and the horizon
  bool bound_violation = false;  // exact engine exceeded its bound; sample is invalid
};

/// Simulates one path: alternates next-jump search and kernel draws until the
/// horizon, recording every jump and the requested density snapshots.
/// Snapshots are computed by evolving a copy of the segment's starting state,
/// matching the definition of X(t) between records.
PathResult simulate_path(const PathConfig& cfg, RandomStream rng);

struct FirstJumpSample {
  double time = 0;
  bool censored = false;
  int slot = 0;
  AccidentParams accident;
};

/// Draws the first jump (and the sampled accident) of a single path.
FirstJumpSample first_jump_sample(const PathConfig& cfg, RandomStream& rng);

/// First-jump samples for n paths with streams derived from (master_seed, i).
/// With the approximate engine all paths share the same deterministic flow
/// until their jump, so the trajectory is advanced once; results are bitwise
/// identical to calling first_jump_sample per path.
std::vector<FirstJumpSample> first_jump_ensemble(const PathConfig& cfg,
                                                 std::uint64_t master_seed, int n);

}  // namespace accsim
