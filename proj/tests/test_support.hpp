#pragma once

// Brute-force references shared by the test suites. Everything here is
// independent of the library's prefix-table / fast paths on purpose.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "weaklab/rng.hpp"
#include "weaklab/weights.hpp"

namespace weaklab::testing {

inline double naive_cube_sum(const Grid& grid,
                             const std::vector<double>& values,
                             const Cube& q) {
  double sum = 0.0;
  if (grid.dim == 1) {
    for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
      sum += values[i];
  } else {
    for (int j = q.origin[1]; j < q.origin[1] + q.side_cells; ++j)
      for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
        sum += values[grid.cell_index(i, j)];
  }
  return sum;
}

inline double naive_cube_min(const Grid& grid,
                             const std::vector<double>& values,
                             const Cube& q) {
  double m = std::numeric_limits<double>::infinity();
  if (grid.dim == 1) {
    for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
      m = std::min(m, values[i]);
  } else {
    for (int j = q.origin[1]; j < q.origin[1] + q.side_cells; ++j)
      for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
        m = std::min(m, values[grid.cell_index(i, j)]);
  }
  return m;
}

inline double naive_cube_average(const Grid& grid,
                                 const std::vector<double>& values,
                                 const Cube& q) {
  double cells = grid.dim == 1
                     ? q.side_cells
                     : static_cast<double>(q.side_cells) * q.side_cells;
  return naive_cube_sum(grid, values, q) / cells;
}

inline double rel_diff(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

inline SampledFunction random_function(const Grid& grid, SplitMix& rng,
                                       double zero_fraction = 0.25) {
  std::vector<double> values(grid.cell_count());
  for (double& v : values) {
    v = rng.next_unit();
    if (v < zero_fraction) v = 0.0;
  }
  return make_sampled(grid, std::move(values));
}

inline Weight random_weight(const Grid& grid, SplitMix& rng, double lo = 0.1,
                            double hi = 1.1) {
  std::vector<double> values(grid.cell_count());
  for (double& v : values) v = rng.uniform(lo, hi);
  return make_weight({grid, std::move(values)});
}

inline Cube random_cube(const Grid& grid, SplitMix& rng) {
  Cube q;
  q.side_cells =
      1 + static_cast<int>(rng.next_below(grid.cells_per_axis));
  for (int a = 0; a < grid.dim; ++a)
    q.origin[a] = static_cast<int>(
        rng.next_below(grid.cells_per_axis - q.side_cells + 1));
  return q;
}

} // namespace weaklab::testing
