#pragma once

#include <span>
#include <vector>

#include "accsim/pdp.hpp"

namespace accsim {

/// Tabulated nondecreasing function of time, F(0) = 0 for CDFs.
struct CdfTable {
  std::vector<double> times;
  std::vector<double> values;
};

struct FirstJumpLaw {
  CdfTable cdf;  // P(T_1 <= t) = 1 - exp(-integral of the rate along the flow)
  CdfTable pdf;  // g(t) = rate(t) * exp(-integral)
};

/// Analytic law of the first jump time: the rate along the deterministic flow
/// is integrated with the left rectangle rule on the CFL time grid.
/// Requires an initial state without active accidents.
FirstJumpLaw analytic_first_jump_law(const PathConfig& cfg);
CdfTable analytic_first_jump_cdf(const PathConfig& cfg);
CdfTable analytic_first_jump_pdf(const PathConfig& cfg);

/// Table lookup with linear interpolation, clamped at the ends.
double table_value(const CdfTable& table, double t);

/// Right-continuous empirical CDF: steps of 1/n at each sorted sample.
CdfTable ecdf(std::vector<double> samples);

/// sup |ECDF - F| over the sample points and the table knots.
double ks_distance(std::vector<double> samples, const CdfTable& cdf);

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

struct Histogram {
  std::vector<double> edges;      // bins + 1 entries
  std::vector<long long> counts;  // one per bin; samples outside are dropped
};

Histogram histogram(std::span<const double> samples, std::vector<double> edges);
std::vector<double> uniform_bin_edges(double lo, double hi, int bins);

}  // namespace accsim
