#include "accsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "accsim/errors.hpp"

namespace accsim {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw InvalidStateError("parse_double: not a number: '" + text + "'");
  return v;
}

std::ofstream open_output(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream os(file);
  if (!os) throw InvalidStateError("cannot open output file: " + file.string());
  return os;
}

const char* jump_kind_name(JumpKind kind) {
  switch (kind) {
    case JumpKind::kInit: return "init";
    case JumpKind::kAccident: return "accident";
    case JumpKind::kResolution: return "resolution";
  }
  return "?";
}

void write_jump_chain_csv(std::ostream& os, std::span<const PathResult> paths) {
  os << "path_id,T_n,kind,slot,p,s,c\n";
  for (std::size_t path_id = 0; path_id < paths.size(); ++path_id) {
    for (const JumpRecord& rec : paths[path_id].chain) {
      os << path_id << ',' << format_double(rec.time) << ',' << jump_kind_name(rec.kind) << ','
         << rec.slot;
      if (rec.kind == JumpKind::kInit) {
        os << ",,,\n";
      } else {
        const AccidentParams& acc = rec.accidents[rec.slot - 1];
        os << ',' << format_double(acc.position) << ',' << format_double(acc.size) << ','
           << format_double(acc.drop) << '\n';
      }
    }
  }
}

void write_snapshot_csv(std::ostream& os, const Grid& grid, std::span<const double> values) {
  os << "x,rho\n";
  for (int i = 0; i < grid.n_cells; ++i)
    os << format_double(grid.cell_center(i)) << ',' << format_double(values[i]) << '\n';
}

void write_table_csv(std::ostream& os, const CdfTable& table, const std::string& value_name) {
  os << "t," << value_name << '\n';
  for (std::size_t i = 0; i < table.times.size(); ++i)
    os << format_double(table.times[i]) << ',' << format_double(table.values[i]) << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram& hist) {
  os << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i)
    os << format_double(hist.edges[i]) << ',' << format_double(hist.edges[i + 1]) << ','
       << hist.counts[i] << '\n';
}

void write_first_jump_samples_csv(std::ostream& os, std::span<const FirstJumpSample> samples) {
  os << "path_id,t1,censored,position,size,drop\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const FirstJumpSample& s = samples[i];
    os << i << ',' << format_double(s.time) << ',' << (s.censored ? 1 : 0);
    if (s.censored)
      os << ",,,\n";
    else
      os << ',' << format_double(s.accident.position) << ',' << format_double(s.accident.size)
         << ',' << format_double(s.accident.drop) << '\n';
  }
}

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows) {
  os << "dx,l1_diff,order\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << format_double(rows[i].dx) << ',';
    if (i >= 1) os << format_double(rows[i].l1_diff);
    os << ',';
    if (i >= 2) os << format_double(rows[i].order);
    os << '\n';
  }
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace accsim
