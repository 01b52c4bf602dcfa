#include "accsim/pdp.hpp"

#include <algorithm>
#include <cmath>

#include "accsim/errors.hpp"

namespace accsim {

ModelState initial_state(const PathConfig& cfg) {
  ModelState state;
  state.rho.values = cfg.initial_density;
  state.rho.time = 0;
  return state;
}

CapacityField rebuild_capacity(const PathConfig& cfg, const ModelState& state) {
  return total_capacity(cfg.road, state.accidents, cfg.mollifier, cfg.grid);
}

NextJump approx_next_jump(ModelState& state, const CapacityField& capacity,
                          const PathConfig& cfg, RandomStream& rng, EvolveMonitor* monitor) {
  double t_loc = state.time();
  while (t_loc < cfg.horizon) {
    const double psi = jump_rate(state, capacity, cfg.grid, cfg.rates);
    double dt = cfg.dt_ref;
    if (psi > 0) dt = std::min(dt, cfg.acceptance_ratio / psi);
    const double remaining = cfg.horizon - t_loc;
    const bool clamped = remaining <= dt;
    if (clamped) dt = remaining;
    const double t_next = clamped ? cfg.horizon : t_loc + dt;

    const bool accept = rng.canonical() < dt * psi;
    evolve(state.rho, capacity, cfg.grid, t_next, cfg.cfl_factor, monitor);
    if (accept) return {t_next, false};
    t_loc = t_next;
  }
  return {cfg.horizon, true};
}

NextJump exact_next_jump(ModelState& state, const CapacityField& capacity,
                         const PathConfig& cfg, double rate_bound, RandomStream& rng,
                         EvolveMonitor* monitor) {
  if (!(rate_bound > 0)) {
    // A vanishing bound certifies a vanishing rate along the flow: censor.
    evolve(state.rho, capacity, cfg.grid, cfg.horizon, cfg.cfl_factor, monitor);
    return {cfg.horizon, true};
  }
  double candidate = state.time();
  while (true) {
    candidate += rng.exponential(rate_bound);
    if (candidate >= cfg.horizon) {
      evolve(state.rho, capacity, cfg.grid, cfg.horizon, cfg.cfl_factor, monitor);
      return {cfg.horizon, true};
    }
    evolve(state.rho, capacity, cfg.grid, candidate, cfg.cfl_factor, monitor);
    const double psi = jump_rate(state, capacity, cfg.grid, cfg.rates);
    if (psi > rate_bound * (1.0 + 1e-9))
      throw BoundViolationError("exact_next_jump: jump rate exceeded the thinning bound");
    if (rng.canonical() < psi / rate_bound) return {candidate, false};
  }
}

double suggest_rate_bound(const ModelState& state, const CapacityField& capacity,
                          const Grid& grid, const RateParams& rates, double remaining) {
  const double mass_now = std::max(mass(state.rho, grid), 0.0);
  const double flux_cap = capacity.sup_abs * std::min(mass_now, kFluxSup * grid.length());

  // Discrete total-variation growth; the one-sided difference norm is the one
  // the per-step estimate actually uses.
  const double a1 = capacity.deriv_sup_onesided * kFluxDerivSup;
  const double a2 = capacity.second_deriv_l1;
  const double tv0 = total_variation(state.rho);
  double tv_bound;
  if (a1 > 0) {
    const double growth = std::exp(a1 * remaining);
    tv_bound = growth * tv0 + 1.5 * kFluxSup * a2 / a1 * (growth - 1.0);
  } else {
    tv_bound = tv0 + 1.5 * kFluxSup * a2 * remaining;
  }

  // Periodic ring: positive jumps are exactly half the total variation.
  const double bound = rates.flux * flux_cap + rates.upjump * 0.5 * tv_bound +
                       rates.resolution * active_count(state.accidents);
  if (!std::isfinite(bound))
    throw InvalidStateError(
        "suggest_rate_bound: bound overflows; supply rate_bound or use the approximate engine");
  return bound;
}

namespace {

NextJump next_jump(ModelState& state, const CapacityField& capacity, const PathConfig& cfg,
                   RandomStream& rng, EvolveMonitor* monitor) {
  if (cfg.engine == JumpEngine::kApproximate)
    return approx_next_jump(state, capacity, cfg, rng, monitor);
  const double bound =
      cfg.rate_bound ? *cfg.rate_bound
                     : suggest_rate_bound(state, capacity, cfg.grid, cfg.rates,
                                          cfg.horizon - state.time());
  return exact_next_jump(state, capacity, cfg, bound, rng, monitor);
}

}  // namespace

PathResult simulate_path(const PathConfig& cfg, RandomStream rng) {
  PathResult result;
  ModelState state = initial_state(cfg);
  CapacityField capacity = rebuild_capacity(cfg, state);
  result.monitor.check_scheme_bounds = cfg.check_scheme_bounds;
  result.monitor.reset_reference(state.rho, cfg.grid);

  std::vector<double> pending = cfg.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  auto emit_snapshots = [&](const ModelState& segment_start, const CapacityField& segment_cap,
                            double t_end) {
    for (; next_snapshot < pending.size() && pending[next_snapshot] <= t_end; ++next_snapshot) {
      DensityField copy = segment_start.rho;
      evolve(copy, segment_cap, cfg.grid, pending[next_snapshot], cfg.cfl_factor, nullptr);
      result.snapshots.push_back({pending[next_snapshot], std::move(copy.values)});
    }
  };

  result.chain.push_back(JumpRecord{0.0, JumpKind::kInit, 0, state.accidents});
  if (cfg.capture_record_densities) result.record_densities.push_back(state.rho);

  while (state.time() < cfg.horizon) {
    const ModelState segment_start = state;
    NextJump jump;
    try {
      jump = next_jump(state, capacity, cfg, rng, &result.monitor);
    } catch (const BoundViolationError&) {
      // the sample is invalid from here on; keep the chain so far and report
      result.bound_violation = true;
      return result;
    }
    emit_snapshots(segment_start, capacity, jump.time);
    if (jump.censored) {
      result.censored_tail = true;
      break;
    }
    const JumpOutcome outcome = sample_jump(state, capacity, cfg.grid, cfg.beta, cfg.rates,
                                            cfg.size_dist, cfg.drop_dist, rng);
    result.chain.push_back(JumpRecord{jump.time, outcome.kind, outcome.slot, state.accidents});
    if (cfg.capture_record_densities) result.record_densities.push_back(state.rho);
    capacity = rebuild_capacity(cfg, state);
  }
  emit_snapshots(state, capacity, cfg.horizon);
  return result;
}

FirstJumpSample first_jump_sample(const PathConfig& cfg, RandomStream& rng) {
  ModelState state = initial_state(cfg);
  CapacityField capacity = rebuild_capacity(cfg, state);
  const NextJump jump = next_jump(state, capacity, cfg, rng, nullptr);
  if (jump.censored) return {cfg.horizon, true, 0, {}};
  const JumpOutcome outcome = sample_jump(state, capacity, cfg.grid, cfg.beta, cfg.rates,
                                          cfg.size_dist, cfg.drop_dist, rng);
  return {jump.time, false, outcome.slot, outcome.params};
}

std::vector<FirstJumpSample> first_jump_ensemble(const PathConfig& cfg,
                                                 std::uint64_t master_seed, int n) {
  if (cfg.engine == JumpEngine::kExact) {
    std::vector<FirstJumpSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      RandomStream rng = RandomStream::for_path(master_seed, i);
      out.push_back(first_jump_sample(cfg, rng));
    }
    return out;
  }

  // All paths share the deterministic flow until their own first jump, so the
  // trajectory is advanced once and each path only consumes its own uniforms.
  std::vector<RandomStream> streams;
  streams.reserve(n);
  for (int i = 0; i < n; ++i) streams.push_back(RandomStream::for_path(master_seed, i));

  std::vector<FirstJumpSample> out(n, FirstJumpSample{cfg.horizon, true, 0, {}});
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;

  ModelState state = initial_state(cfg);
  CapacityField capacity = rebuild_capacity(cfg, state);
  std::vector<int> accepted;
  std::vector<int> still_alive;
  double t_loc = 0;

  while (t_loc < cfg.horizon && !alive.empty()) {
    const double psi = jump_rate(state, capacity, cfg.grid, cfg.rates);
    double dt = cfg.dt_ref;
    if (psi > 0) dt = std::min(dt, cfg.acceptance_ratio / psi);
    const double remaining = cfg.horizon - t_loc;
    const bool clamped = remaining <= dt;
    if (clamped) dt = remaining;
    const double t_next = clamped ? cfg.horizon : t_loc + dt;
    const double threshold = dt * psi;

    accepted.clear();
    still_alive.clear();
    for (int path : alive)
      (streams[path].canonical() < threshold ? accepted : still_alive).push_back(path);
    alive.swap(still_alive);

    evolve(state.rho, capacity, cfg.grid, t_next, cfg.cfl_factor, nullptr);
    for (int path : accepted) {
      ModelState jump_state = state;
      const JumpOutcome outcome =
          sample_jump(jump_state, capacity, cfg.grid, cfg.beta, cfg.rates, cfg.size_dist,
                      cfg.drop_dist, streams[path]);
      out[path] = FirstJumpSample{t_next, false, outcome.slot, outcome.params};
    }
    t_loc = t_next;
  }
  return out;
}

}  // namespace accsim
