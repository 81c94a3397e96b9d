#include "weaklab/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace weaklab {

Grid build_grid(int dim, double half_width, int cells_per_axis) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("grid: dim must be 1 or 2");
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw std::invalid_argument("grid: half_width must be positive");
  if (cells_per_axis < 4 ||
      !std::has_single_bit(static_cast<unsigned>(cells_per_axis)))
    throw std::invalid_argument(
        "grid: cells_per_axis must be a power of two >= 4");
  Grid g;
  g.dim = dim;
  g.half_width = half_width;
  g.cells_per_axis = cells_per_axis;
  g.cell_side = 2.0 * half_width / cells_per_axis;
  return g;
}

double cube_measure(const Grid& grid, const Cube& q) {
  double side = q.side_cells * grid.cell_side;
  return grid.dim == 1 ? side : side * side;
}

bool cube_contains_cell(const Grid& grid, const Cube& q, std::int64_t cell) {
  auto c = grid.cell_coords(cell);
  for (int a = 0; a < grid.dim; ++a)
    if (c[a] < q.origin[a] || c[a] >= q.origin[a] + q.side_cells) return false;
  return true;
}

bool cube_in_grid(const Grid& grid, const Cube& q) {
  if (q.side_cells < 1) return false;
  for (int a = 0; a < grid.dim; ++a)
    if (q.origin[a] < 0 || q.origin[a] + q.side_cells > grid.cells_per_axis)
      return false;
  return true;
}

std::string to_string(CubeFamilyKind kind) {
  return kind == CubeFamilyKind::AllCubes ? "all_cubes" : "shifted_dyadic";
}

CubeFamilyKind cube_family_from_string(const std::string& s) {
  if (s == "all_cubes") return CubeFamilyKind::AllCubes;
  if (s == "shifted_dyadic") return CubeFamilyKind::ShiftedDyadic;
  throw config_error("unknown cube family: " + s);
}

namespace {

// Per-scale origin offsets: the dyadic grid plus the two one-third-trick
// translates (floor(s/3) and floor(2s/3) cells), deduplicated.
std::vector<int> dyadic_shifts(int side) {
  std::vector<int> shifts{0, side / 3, 2 * side / 3};
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  return shifts;
}

} // namespace

std::vector<Cube> enumerate_cubes(const Grid& grid, CubeFamilyKind kind) {
  const int n = grid.cells_per_axis;
  std::vector<Cube> out;
  if (kind == CubeFamilyKind::AllCubes) {
    if (grid.dim != 1)
      throw std::invalid_argument("AllCubes family is only defined for n=1");
    out.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b <= n; ++b) out.push_back({{a, 0}, b - a});
    return out;
  }
  for (int s = 1; s <= n; s *= 2) {
    for (int sx : dyadic_shifts(s)) {
      if (grid.dim == 1) {
        for (int ox = sx; ox + s <= n; ox += s) out.push_back({{ox, 0}, s});
      } else {
        for (int sy : dyadic_shifts(s))
          for (int oy = sy; oy + s <= n; oy += s)
            for (int ox = sx; ox + s <= n; ox += s)
              out.push_back({{ox, oy}, s});
      }
    }
  }
  return out;
}

std::vector<Cube> enumerate_cubes_containing(const Grid& grid,
                                             CubeFamilyKind kind,
                                             std::int64_t cell) {
  if (cell < 0 || cell >= grid.cell_count())
    throw std::invalid_argument("cell index out of range");
  const int n = grid.cells_per_axis;
  const auto c = grid.cell_coords(cell);
  std::vector<Cube> out;
  if (kind == CubeFamilyKind::AllCubes) {
    if (grid.dim != 1)
      throw std::invalid_argument("AllCubes family is only defined for n=1");
    for (int a = 0; a <= c[0]; ++a)
      for (int b = c[0] + 1; b <= n; ++b) out.push_back({{a, 0}, b - a});
    return out;
  }
  for (int s = 1; s <= n; s *= 2) {
    for (int sx : dyadic_shifts(s)) {
      int ox = sx + ((c[0] - sx) / s) * s;
      if (c[0] < sx || ox + s > n) continue;
      if (grid.dim == 1) {
        out.push_back({{ox, 0}, s});
      } else {
        for (int sy : dyadic_shifts(s)) {
          int oy = sy + ((c[1] - sy) / s) * s;
          if (c[1] < sy || oy + s > n) continue;
          out.push_back({{ox, oy}, s});
        }
      }
    }
  }
  return out;
}

PrefixTable::PrefixTable(const Grid& grid, std::span<const double> values)
    : grid_(grid) {
  const int n = grid.cells_per_axis;
  if (static_cast<std::int64_t>(values.size()) != grid.cell_count())
    throw std::invalid_argument("prefix: value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("prefix: non-finite value");

  if (grid.dim == 1) {
    prefix_.assign(n + 1, 0.0L);
    for (int i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] + values[i];
  } else {
    prefix_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0L);
    auto P = [&](int i, int j) -> long double& {
      return prefix_[static_cast<std::size_t>(j) * (n + 1) + i];
    };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        P(i + 1, j + 1) = values[grid.cell_index(i, j)] + P(i, j + 1) +
                          P(i + 1, j) - P(i, j);
  }

  // Sparse min tables: one per row (a single row when dim == 1).
  levels_ = 1;
  while ((1 << levels_) <= n) ++levels_;
  const int rows = grid.dim == 1 ? 1 : n;
  min_.assign(levels_, {});
  min_[0].resize(static_cast<std::size_t>(rows) * n);
  for (int r = 0; r < rows; ++r)
    for (int i = 0; i < n; ++i)
      min_[0][static_cast<std::size_t>(r) * n + i] =
          values[grid.dim == 1 ? i : grid.cell_index(i, r)];
  for (int k = 1; k < levels_; ++k) {
    const int len = n - (1 << k) + 1;
    if (len <= 0) break;
    min_[k].resize(static_cast<std::size_t>(rows) * len);
    const int prev_len = n - (1 << (k - 1)) + 1;
    for (int r = 0; r < rows; ++r)
      for (int i = 0; i < len; ++i)
        min_[k][static_cast<std::size_t>(r) * len + i] =
            std::min(min_[k - 1][static_cast<std::size_t>(r) * prev_len + i],
                     min_[k - 1][static_cast<std::size_t>(r) * prev_len + i +
                                 (1 << (k - 1))]);
  }
}

void PrefixTable::check_cube(const Cube& q) const {
  if (!cube_in_grid(grid_, q))
    throw std::invalid_argument("cube out of grid bounds");
}

double PrefixTable::cube_sum(const Cube& q) const {
  check_cube(q);
  const int n = grid_.cells_per_axis;
  if (grid_.dim == 1) {
    return static_cast<double>(prefix_[q.origin[0] + q.side_cells] -
                               prefix_[q.origin[0]]);
  }
  auto P = [&](int i, int j) -> long double {
    return prefix_[static_cast<std::size_t>(j) * (n + 1) + i];
  };
  const int x0 = q.origin[0], y0 = q.origin[1];
  const int x1 = x0 + q.side_cells, y1 = y0 + q.side_cells;
  return static_cast<double>(P(x1, y1) - P(x0, y1) - P(x1, y0) + P(x0, y0));
}

double PrefixTable::cube_integral(const Cube& q) const {
  return cube_sum(q) * grid_.cell_measure();
}

double PrefixTable::cube_average(const Cube& q) const {
  double cells = grid_.dim == 1
                     ? q.side_cells
                     : static_cast<double>(q.side_cells) * q.side_cells;
  return cube_sum(q) / cells;
}

double PrefixTable::row_min(int row, int a, int b) const {
  const int n = grid_.cells_per_axis;
  const int k = std::bit_width(static_cast<unsigned>(b - a)) - 1;
  const int len = n - (1 << k) + 1;
  const auto& lvl = min_[k];
  return std::min(lvl[static_cast<std::size_t>(row) * len + a],
                  lvl[static_cast<std::size_t>(row) * len + b - (1 << k)]);
}

double PrefixTable::cube_min(const Cube& q) const {
  check_cube(q);
  if (grid_.dim == 1)
    return row_min(0, q.origin[0], q.origin[0] + q.side_cells);
  double m = row_min(q.origin[1], q.origin[0], q.origin[0] + q.side_cells);
  for (int r = q.origin[1] + 1; r < q.origin[1] + q.side_cells; ++r)
    m = std::min(m, row_min(r, q.origin[0], q.origin[0] + q.side_cells));
  return m;
}

void PrefixTable::debug_perturb_prefix(std::size_t flat_index, double delta) {
  prefix_.at(flat_index) += delta;
}

} // namespace weaklab
