#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "accsim/grid.hpp"

namespace accsim {

/// One accident slot. A slot with drop == 0 is inactive; position and size of
/// resolved accidents are kept as-is, only the drop is cleared.
struct AccidentParams {
  double position = 0;  // road coordinate in [-L, L]
  double size = 0;      // length of the affected interval
  double drop = 0;      // capacity reduction fraction in [0, 1)
};

enum class MollifierMode { kSharp, kSmooth };

/// Compactly supported smoothing kernel of unit mass on [-epsilon, epsilon].
/// Sharp mode skips the convolution entirely.
struct Mollifier {
  MollifierMode mode = MollifierMode::kSharp;
  double epsilon = 0;
};

/// Piecewise-constant road capacity on [-L, L], extended periodically.
/// Matching first and last segment values keep the periodic wrap continuous.
struct RoadProfile {
  std::vector<double> breakpoints;  // -L = x_0 < ... < x_M = L
  std::vector<double> values;       // capacity on [x_m, x_{m+1})

  double half_length() const { return breakpoints.back(); }
  double max_value() const;
  double value_at(double x) const;  // periodic wrap, right-continuous
  void validate(double floor) const;
};

/// Capacity factor sampled at cell centers together with the discrete norm
/// estimates used by the CFL condition and the total-variation bound checks.
struct CapacityField {
  std::vector<double> values;     // a_i at cell centers
  double sup_abs = 0;             // max_i |a_i|
  double deriv_sup = 0;           // max_i |a_{i+1} - a_{i-1}| / (2 dx)
  double deriv_l1 = 0;            // sum_i |a'_i| dx (centered)
  double second_deriv_l1 = 0;     // sum_i |a_{i+1} - 2 a_i + a_{i-1}| / dx
  double deriv_sup_onesided = 0;  // max_i |a_{i+1} - a_i| / dx
};

/// Capacity factor of a single accident: 1 - c on the interval
/// [p - s/2, p + s/2], wrapped modulo the period.
inline double accident_factor(double x, const AccidentParams& acc, double period) {
  if (acc.drop <= 0) return 1.0;
  const double dist = std::remainder(x - acc.position, period);
  return std::abs(dist) <= 0.5 * acc.size ? 1.0 - acc.drop : 1.0;
}

namespace detail {

constexpr int kMollifyPanels = 64;

inline double bump_kernel(double t) {
  // exp(-1/(1-t^2)) on (-1, 1); normalization happens discretely in mollify
  // so that constants are preserved exactly.
  const double w = 1.0 - t * t;
  return w > 0 ? std::exp(-1.0 / w) : 0.0;
}

}  // namespace detail

/// Convolution of an arbitrary (typically piecewise-constant) function with
/// the bump kernel, evaluated at x by a fixed composite midpoint rule. The
/// kernel weights are normalized by the same rule, so mollify(const) == const.
template <class F>
double mollify(F&& f, const Mollifier& m, double x) {
  if (m.mode == MollifierMode::kSharp) return f(x);
  const int n = detail::kMollifyPanels;
  const double h = 2.0 * m.epsilon / n;
  double weight_sum = 0;
  double value_sum = 0;
  for (int k = 0; k < n; ++k) {
    const double u = -m.epsilon + (k + 0.5) * h;
    const double w = detail::bump_kernel(u / m.epsilon);
    weight_sum += w;
    value_sum += w * f(x - u);
  }
  return value_sum / weight_sum;
}

/// Pointwise capacity a(x) = c_road(x) * prod_i c_a(x, p_i, s_i, c_i), with
/// each factor mollified separately in smooth mode.
double capacity_at(double x, const RoadProfile& road,
                   std::span<const AccidentParams> accidents, const Mollifier& m);

/// Samples the capacity at all cell centers and fills the discrete norms.
/// Throws InvalidStateError if any cell value is non-positive.
CapacityField total_capacity(const RoadProfile& road,
                             std::span<const AccidentParams> accidents,
                             const Mollifier& m, const Grid& grid);

}  // namespace accsim
