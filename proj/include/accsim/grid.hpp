#pragma once

namespace accsim {

/// Uniform periodic grid on [-L, L]. Cell i covers [x_{i-1/2}, x_{i+1/2})
/// with left interface at -L + i*dx; index arithmetic is modulo n_cells.
struct Grid {
  double half_length = 0;
  int n_cells = 0;
  double dx = 0;

  static Grid make(double half_length, int n_cells) {
    return Grid{half_length, n_cells, 2.0 * half_length / n_cells};
  }

  double length() const { return 2.0 * half_length; }
  double cell_center(int i) const { return -half_length + (i + 0.5) * dx; }
  double interface_coord(int i) const { return -half_length + i * dx; }

  int wrap(int i) const {
    int m = i % n_cells;
    return m < 0 ? m + n_cells : m;
  }
};

}  // namespace accsim
