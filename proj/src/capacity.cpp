#include "accsim/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "accsim/errors.hpp"

namespace accsim {

double RoadProfile::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double RoadProfile::value_at(double x) const {
  const double L = half_length();
  const double period = 2.0 * L;
  double y = x - period * std::floor((x + L) / period);
  if (y >= L) y = -L;  // guard against roundoff at the wrap
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
  auto idx = static_cast<std::size_t>(it - breakpoints.begin());
  if (idx == 0) return values.front();
  idx -= 1;
  if (idx >= values.size()) idx = values.size() - 1;
  return values[idx];
}

void RoadProfile::validate(double floor) const {
  if (breakpoints.size() < 2) throw ConfigError("road: need at least two breakpoints");
  if (values.size() + 1 != breakpoints.size())
    throw ConfigError("road: capacities must have one entry per segment");
  if (!(floor > 0)) throw ConfigError("road: capacity floor must be positive");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw ConfigError("road: breakpoints must be strictly increasing");
  if (breakpoints.front() != -breakpoints.back())
    throw ConfigError("road: breakpoints must span [-L, L]");
  for (double v : values)
    if (!(v >= floor)) throw ConfigError("road: capacities must be >= the configured floor");
  if (values.front() != values.back())
    throw ConfigError("road: first and last segment capacity must match (periodic wrap)");
}

double capacity_at(double x, const RoadProfile& road,
                   std::span<const AccidentParams> accidents, const Mollifier& m) {
  const double period = 2.0 * road.half_length();
  double a = mollify([&road](double y) { return road.value_at(y); }, m, x);
  for (const AccidentParams& acc : accidents) {
    if (acc.drop <= 0) continue;
    a *= mollify([&acc, period](double y) { return accident_factor(y, acc, period); }, m, x);
  }
  return a;
}

CapacityField total_capacity(const RoadProfile& road,
                             std::span<const AccidentParams> accidents,
                             const Mollifier& m, const Grid& grid) {
  CapacityField field;
  field.values.resize(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i) {
    const double a = capacity_at(grid.cell_center(i), road, accidents, m);
    if (!(a > 0)) throw InvalidStateError("total_capacity: non-positive capacity value");
    field.values[i] = a;
  }

  const int n = grid.n_cells;
  const auto& a = field.values;
  for (int i = 0; i < n; ++i) {
    const double ap = a[(i + 1) % n];
    const double am = a[(i + n - 1) % n];
    const double centered = std::abs(ap - am) / (2.0 * grid.dx);
    const double onesided = std::abs(ap - a[i]) / grid.dx;
    const double second = std::abs(ap - 2.0 * a[i] + am) / grid.dx;  // |a''| dx
    field.sup_abs = std::max(field.sup_abs, std::abs(a[i]));
    field.deriv_sup = std::max(field.deriv_sup, centered);
    field.deriv_sup_onesided = std::max(field.deriv_sup_onesided, onesided);
    field.deriv_l1 += centered * grid.dx;
    field.second_deriv_l1 += second;
  }
  return field;
}

}  // namespace accsim
