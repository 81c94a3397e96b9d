#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weaklab/common.hpp"

namespace weaklab {

using Point = std::array<double, 2>; // coordinate 1 unused when dim == 1

/// Staggered uniform discretization of [-R,R)^n, n in {1,2}.
///
/// Cell centers sit at -R + (k+1/2)*cell_side per axis, so no center
/// coordinate is ever 0 (the closest one is cell_side/2 away).
struct Grid {
  int dim = 1;
  double half_width = 1.0;    // R
  int cells_per_axis = 4;     // N, power of two >= 4
  double cell_side = 0.5;     // 2R/N

  std::int64_t cell_count() const {
    std::int64_t n = cells_per_axis;
    return dim == 1 ? n : n * n;
  }
  double cell_measure() const {
    return dim == 1 ? cell_side : cell_side * cell_side;
  }
  /// Axis coordinate of the k-th cell center.
  double center_coord(int k) const {
    return -half_width + (k + 0.5) * cell_side;
  }
  std::array<int, 2> cell_coords(std::int64_t index) const {
    if (dim == 1) return {static_cast<int>(index), 0};
    return {static_cast<int>(index % cells_per_axis),
            static_cast<int>(index / cells_per_axis)};
  }
  std::int64_t cell_index(int ix, int iy = 0) const {
    return dim == 1 ? ix : static_cast<std::int64_t>(iy) * cells_per_axis + ix;
  }
  Point cell_center(std::int64_t index) const {
    auto c = cell_coords(index);
    return {center_coord(c[0]), dim == 2 ? center_coord(c[1]) : 0.0};
  }
  /// Quarter-cell-shifted evaluation point used by the singular integral.
  Point target_point(std::int64_t index) const {
    Point p = cell_center(index);
    p[0] += 0.25 * cell_side;
    if (dim == 2) p[1] += 0.25 * cell_side;
    return p;
  }

  bool operator==(const Grid&) const = default;
};

/// Validates and builds a grid; throws std::invalid_argument on bad input.
Grid build_grid(int dim, double half_width, int cells_per_axis);

/// Axis-aligned cube of whole cells; same side length on every axis.
struct Cube {
  std::array<int, 2> origin{0, 0}; // cell index per axis
  int side_cells = 1;

  bool operator==(const Cube&) const = default;
};

double cube_measure(const Grid& grid, const Cube& q);
bool cube_contains_cell(const Grid& grid, const Cube& q, std::int64_t cell);
bool cube_in_grid(const Grid& grid, const Cube& q);

enum class CubeFamilyKind {
  AllCubes,      // n = 1 only: every cell-aligned interval
  ShiftedDyadic, // dyadic cubes plus the two one-third-trick translates
};

std::string to_string(CubeFamilyKind kind);
CubeFamilyKind cube_family_from_string(const std::string& s);

/// All cubes of the family that fit inside the grid, in deterministic order.
std::vector<Cube> enumerate_cubes(const Grid& grid, CubeFamilyKind kind);

/// All family cubes containing the given cell.
std::vector<Cube> enumerate_cubes_containing(const Grid& grid,
                                             CubeFamilyKind kind,
                                             std::int64_t cell);

/// Summed-area table plus range-minimum structure over per-cell values.
///
/// Sums accumulate in extended precision so cube_sum stays within 1e-12
/// relative of the naive cell-by-cell sum; cube_min is exact.
class PrefixTable {
public:
  PrefixTable(const Grid& grid, std::span<const double> values);

  const Grid& grid() const { return grid_; }

  /// Sum of cell values inside the cube.
  double cube_sum(const Cube& q) const;
  /// Integral of the piecewise-constant surrogate: cube_sum * cell measure.
  double cube_integral(const Cube& q) const;
  /// Mean of cell values == integral / |Q|.
  double cube_average(const Cube& q) const;
  /// Exact minimum of cell values inside the cube.
  double cube_min(const Cube& q) const;

  /// Test hook: additively perturbs one prefix entry to simulate corruption.
  void debug_perturb_prefix(std::size_t flat_index, double delta);

private:
  void check_cube(const Cube& q) const;
  double row_min(int row, int a, int b) const; // min over [a,b) in a row table

  Grid grid_;
  std::vector<long double> prefix_;      // (N+1) or (N+1)^2 corner sums
  std::vector<std::vector<double>> min_; // sparse table levels, row-major
  int levels_ = 0;
};

} // namespace weaklab
