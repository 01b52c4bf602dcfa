#include "accsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "accsim/errors.hpp"

namespace accsim {

FirstJumpLaw analytic_first_jump_law(const PathConfig& cfg) {
  ModelState state = initial_state(cfg);
  if (active_count(state.accidents) != 0)
    throw InvalidStateError("analytic_first_jump_law: initial state must have no accidents");
  const CapacityField capacity = rebuild_capacity(cfg, state);
  const double dt_cfl = cfl_timestep(capacity, cfg.grid, cfg.cfl_factor);
  const double time_eps = 1e-12 * std::max(1.0, cfg.horizon);

  FirstJumpLaw law;
  double integral = 0;
  double psi = jump_rate(state, capacity, cfg.grid, cfg.rates);
  law.cdf.times.push_back(0);
  law.cdf.values.push_back(0);
  law.pdf.times.push_back(0);
  law.pdf.values.push_back(psi);

  std::vector<double> scratch(state.rho.values.size());
  while (cfg.horizon - state.rho.time > time_eps) {
    const double remaining = cfg.horizon - state.rho.time;
    const bool last = remaining <= dt_cfl;
    const double dt = last ? remaining : dt_cfl;
    integral += dt * psi;  // left rectangle at the current state

    lax_friedrichs_step(state.rho.values, capacity.values, dt / cfg.grid.dx, scratch);
    state.rho.values.swap(scratch);
    state.rho.time = last ? cfg.horizon : state.rho.time + dt;

    psi = jump_rate(state, capacity, cfg.grid, cfg.rates);
    const double survival = std::exp(-integral);
    law.cdf.times.push_back(state.rho.time);
    law.cdf.values.push_back(1.0 - survival);
    law.pdf.times.push_back(state.rho.time);
    law.pdf.values.push_back(psi * survival);
  }
  return law;
}

CdfTable analytic_first_jump_cdf(const PathConfig& cfg) {
  return analytic_first_jump_law(cfg).cdf;
}

CdfTable analytic_first_jump_pdf(const PathConfig& cfg) {
  return analytic_first_jump_law(cfg).pdf;
}

double table_value(const CdfTable& table, double t) {
  const auto& ts = table.times;
  if (t <= ts.front()) return table.values.front();
  if (t >= ts.back()) return table.values.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
  const std::size_t lo = hi - 1;
  const double span = ts[hi] - ts[lo];
  const double w = span > 0 ? (t - ts[lo]) / span : 0.0;
  return table.values[lo] + w * (table.values[hi] - table.values[lo]);
}

CdfTable ecdf(std::vector<double> samples) {
  if (samples.empty()) throw EmptySampleError("ecdf: no samples");
  std::sort(samples.begin(), samples.end());
  CdfTable table;
  const double n = static_cast<double>(samples.size());
  table.times = std::move(samples);
  table.values.resize(table.times.size());
  for (std::size_t i = 0; i < table.values.size(); ++i)
    table.values[i] = static_cast<double>(i + 1) / n;
  return table;
}

// sup of |ECDF - F| over the sample points and the table knots, both
// evaluated right-continuously. Dense tables recover the classical statistic;
// atomic reference CDFs (vertical table segments) are compared at their own
// resolution instead of across the jump.
double ks_distance(std::vector<double> samples, const CdfTable& cdf) {
  if (samples.empty()) throw EmptySampleError("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    while (i + 1 < samples.size() && samples[i + 1] == samples[i]) ++i;  // top of the step
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - table_value(cdf, samples[i])));
  }
  for (std::size_t k = 0; k < cdf.times.size(); ++k) {
    const auto below =
        std::upper_bound(samples.begin(), samples.end(), cdf.times[k]) - samples.begin();
    d = std::max(d, std::abs(static_cast<double>(below) / n - cdf.values[k]));
  }
  return d;
}

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw EmptySampleError("ks_distance_two_sample: no samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const double x = (j == b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

Histogram histogram(std::span<const double> samples, std::vector<double> edges) {
  if (edges.size() < 2) throw InvalidStateError("histogram: need at least one bin");
  Histogram h;
  h.edges = std::move(edges);
  h.counts.assign(h.edges.size() - 1, 0);
  for (double x : samples) {
    if (x < h.edges.front() || x >= h.edges.back()) continue;
    const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
    h.counts[static_cast<std::size_t>(it - h.edges.begin()) - 1] += 1;
  }
  return h;
}

std::vector<double> uniform_bin_edges(double lo, double hi, int bins) {
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i)
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
  return edges;
}

}  // namespace accsim
