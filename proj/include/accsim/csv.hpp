#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "accsim/pdp.hpp"
#include "accsim/stats.hpp"

namespace accsim {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

double parse_double(const std::string& text);

/// Creates parent directories and opens the file for writing.
std::ofstream open_output(const std::filesystem::path& file);

const char* jump_kind_name(JumpKind kind);

/// Columns: path_id, T_n, kind, slot, p, s, c. Row 0 of each path is the
/// initial record.
void write_jump_chain_csv(std::ostream& os, std::span<const PathResult> paths);

/// Columns: x, rho.
void write_snapshot_csv(std::ostream& os, const Grid& grid, std::span<const double> values);

/// Columns: t, <value_name>.
void write_table_csv(std::ostream& os, const CdfTable& table, const std::string& value_name);

/// Columns: bin_left, bin_right, count.
void write_histogram_csv(std::ostream& os, const Histogram& hist);

/// Columns: path_id, t1, censored, position, size, drop (blank accident
/// fields for censored paths).
void write_first_jump_samples_csv(std::ostream& os, std::span<const FirstJumpSample> samples);

struct ConvergenceRow {
  double dx = 0;
  double l1_diff = 0;     // against the previous (coarser) level; 0 for the first row
  double order = 0;       // empirical order; 0 where undefined
};

/// Columns: dx, l1_diff, order (blank where undefined).
void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows);

/// Splits a CSV file into cells; no quoting support (none is emitted).
std::vector<std::vector<std::string>> read_csv(std::istream& is);

}  // namespace accsim
