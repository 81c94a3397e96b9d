#include "weaklab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace weaklab {

namespace {

const Grid& common_grid(std::span<const SampledFunction> fs) {
  if (fs.empty()) throw std::invalid_argument("operator: no input functions");
  for (const auto& f : fs)
    if (!(f.grid == fs[0].grid))
      throw std::invalid_argument("operator: mismatched grids");
  return fs[0].grid;
}

void check_alpha(double alpha, int m, int n, bool strict_lower) {
  double upper = static_cast<double>(m) * n;
  bool ok = strict_lower ? (alpha > 0 && alpha < upper)
                         : (alpha >= 0 && alpha < upper);
  if (!ok)
    throw std::invalid_argument("operator: alpha out of range [0, mn)");
}

// Raises to a (usually negative) power; hot path, so the common integer
// exponents avoid the libm pow call.
inline double pow_fast(double base, double e) {
  if (e == -1.0) return 1.0 / base;
  if (e == -2.0) return 1.0 / (base * base);
  if (e == -0.5) return 1.0 / std::sqrt(base);
  return std::pow(base, e);
}

} // namespace

double derived_q(int m, int n, double alpha) {
  return static_cast<double>(n) / (static_cast<double>(m) * n - alpha);
}

SampledFunction maximal(std::span<const SampledFunction> fs,
                        const OperatorSpec& spec) {
  const Grid& grid = common_grid(fs);
  if (static_cast<int>(fs.size()) != spec.m)
    throw std::invalid_argument("operator: arity mismatch");
  check_alpha(spec.alpha, spec.m, grid.dim, false);

  std::vector<PrefixTable> tables;
  tables.reserve(fs.size());
  for (const auto& f : fs) tables.emplace_back(grid, f.values);

  SampledFunction out{grid, std::vector<double>(grid.cell_count(), 0.0)};
  const int n = grid.cells_per_axis;
  for (const Cube& q : enumerate_cubes(grid, spec.family)) {
    double v = std::pow(cube_measure(grid, q), spec.alpha / grid.dim);
    for (const auto& t : tables) v *= t.cube_average(q);
    if (grid.dim == 1) {
      for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
        out.values[i] = std::max(out.values[i], v);
    } else {
      for (int j = q.origin[1]; j < q.origin[1] + q.side_cells; ++j) {
        double* row = out.values.data() + static_cast<std::size_t>(j) * n;
        for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
          row[i] = std::max(row[i], v);
      }
    }
  }
  return out;
}

SampledFunction maximal_oracle(std::span<const SampledFunction> fs,
                               const OperatorSpec& spec) {
  const Grid& grid = common_grid(fs);
  if (static_cast<int>(fs.size()) != spec.m)
    throw std::invalid_argument("operator: arity mismatch");
  check_alpha(spec.alpha, spec.m, grid.dim, false);
  if (spec.family == CubeFamilyKind::AllCubes) {
    if (grid.dim != 1 || grid.cells_per_axis > 256)
      throw guard_error("maximal_oracle: AllCubes guard is n=1, N <= 256");
  } else if (grid.dim == 2 && grid.cells_per_axis > 32) {
    throw guard_error("maximal_oracle: ShiftedDyadic guard is N <= 32 for n=2");
  }

  const double h_measure = grid.cell_measure();
  SampledFunction out{grid, std::vector<double>(grid.cell_count(), 0.0)};
  for (const Cube& q : enumerate_cubes(grid, spec.family)) {
    // Per-factor form straight from the definition, no prefix tables.
    const double measure = cube_measure(grid, q);
    const double norm =
        std::pow(measure, 1.0 - spec.alpha / (grid.dim * spec.m));
    double v = 1.0;
    for (const auto& f : fs) {
      double integral = 0.0;
      if (grid.dim == 1) {
        for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
          integral += f.values[i];
      } else {
        for (int j = q.origin[1]; j < q.origin[1] + q.side_cells; ++j)
          for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
            integral += f.values[grid.cell_index(i, j)];
      }
      v *= integral * h_measure / norm;
    }
    if (grid.dim == 1) {
      for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
        out.values[i] = std::max(out.values[i], v);
    } else {
      for (int j = q.origin[1]; j < q.origin[1] + q.side_cells; ++j)
        for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i) {
          auto idx = grid.cell_index(i, j);
          out.values[idx] = std::max(out.values[idx], v);
        }
    }
  }
  return out;
}

SampledFunction single_fractional_maximal(const SampledFunction& f,
                                          double alpha,
                                          CubeFamilyKind family) {
  const Grid& grid = f.grid;
  check_alpha(alpha, 1, grid.dim, false);
  SampledFunction out{grid, std::vector<double>(grid.cell_count(), 0.0)};
  for (std::int64_t cell = 0; cell < grid.cell_count(); ++cell) {
    double best = 0.0;
    for (const Cube& q : enumerate_cubes_containing(grid, family, cell)) {
      double integral = 0.0;
      if (grid.dim == 1) {
        for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
          integral += f.values[i];
      } else {
        for (int j = q.origin[1]; j < q.origin[1] + q.side_cells; ++j)
          for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
            integral += f.values[grid.cell_index(i, j)];
      }
      integral *= grid.cell_measure();
      double measure = cube_measure(grid, q);
      best = std::max(best,
                      integral / std::pow(measure, 1.0 - alpha / grid.dim));
    }
    out.values[cell] = best;
  }
  return out;
}

SampledFunction multilinear_maximal_plain(std::span<const SampledFunction> fs,
                                          CubeFamilyKind family) {
  const Grid& grid = common_grid(fs);
  SampledFunction out{grid, std::vector<double>(grid.cell_count(), 0.0)};
  for (std::int64_t cell = 0; cell < grid.cell_count(); ++cell) {
    double best = 0.0;
    for (const Cube& q : enumerate_cubes_containing(grid, family, cell)) {
      double v = 1.0;
      for (const auto& f : fs) {
        double sum = 0.0;
        if (grid.dim == 1) {
          for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
            sum += f.values[i];
        } else {
          for (int j = q.origin[1]; j < q.origin[1] + q.side_cells; ++j)
            for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i)
              sum += f.values[grid.cell_index(i, j)];
        }
        double cells = grid.dim == 1
                           ? q.side_cells
                           : static_cast<double>(q.side_cells) * q.side_cells;
        v *= sum / cells;
      }
      best = std::max(best, v);
    }
    out.values[cell] = best;
  }
  return out;
}

double kernel(const Point& x, std::span<const Point> ys, double alpha, int m,
              int n) {
  if (static_cast<int>(ys.size()) != m)
    throw std::invalid_argument("kernel: arity mismatch");
  check_alpha(alpha, m, n, true);
  double s = 0.0;
  for (const Point& y : ys)
    s += n == 1 ? std::abs(x[0] - y[0]) : std::hypot(x[0] - y[0], x[1] - y[1]);
  if (!(s > 0))
    throw std::invalid_argument("kernel: singular evaluation (all y_i == x)");
  return std::pow(s, alpha - static_cast<double>(m) * n);
}

int integral_guard_limit(int dim, int m) {
  if (dim == 1) {
    if (m <= 2) return 256;
    return 64;
  }
  if (m == 1) return 32;
  if (m == 2) return 16;
  return 8;
}

namespace {

// Recursion over the m source slots with running distance sum and product.
void accumulate_tuples(std::span<const SampledFunction> fs,
                       std::span<const double> dist, int slot, double dist_sum,
                       double weight, double exponent, long double& acc) {
  const auto& values = fs[slot].values;
  const bool last = slot + 1 == static_cast<int>(fs.size());
  for (std::size_t y = 0; y < values.size(); ++y) {
    const double fv = values[y];
    if (fv == 0.0) continue;
    const double s = dist_sum + dist[y];
    const double w = weight * fv;
    if (last)
      acc += w * pow_fast(s, exponent);
    else
      accumulate_tuples(fs, dist, slot + 1, s, w, exponent, acc);
  }
}

} // namespace

double fractional_integral_at(std::span<const SampledFunction> fs,
                              double alpha, const Point& x) {
  const Grid& grid = common_grid(fs);
  const int m = static_cast<int>(fs.size());
  check_alpha(alpha, m, grid.dim, true);
  std::vector<double> dist(grid.cell_count());
  for (std::int64_t y = 0; y < grid.cell_count(); ++y) {
    Point c = grid.cell_center(y);
    dist[y] = grid.dim == 1 ? std::abs(x[0] - c[0])
                            : std::hypot(x[0] - c[0], x[1] - c[1]);
  }
  const double exponent = alpha - static_cast<double>(m) * grid.dim;
  long double acc = 0.0L;
  accumulate_tuples(fs, dist, 0, 0.0, 1.0, exponent, acc);
  return static_cast<double>(acc) * std::pow(grid.cell_measure(), m);
}

SampledFunction fractional_integral(std::span<const SampledFunction> fs,
                                    double alpha, bool override_guard) {
  const Grid& grid = common_grid(fs);
  const int m = static_cast<int>(fs.size());
  check_alpha(alpha, m, grid.dim, true);
  const int limit = integral_guard_limit(grid.dim, m);
  if (!override_guard && grid.cells_per_axis > limit) {
    double work = std::pow(static_cast<double>(grid.cells_per_axis),
                           grid.dim * (m + 1));
    throw guard_error(
        "fractional_integral: N=" + std::to_string(grid.cells_per_axis) +
        " exceeds guard N<=" + std::to_string(limit) + " for n=" +
        std::to_string(grid.dim) + ", m=" + std::to_string(m) +
        " (about " + std::to_string(work) + " kernel evaluations)");
  }
  SampledFunction out{grid, std::vector<double>(grid.cell_count(), 0.0)};
  for (std::int64_t t = 0; t < grid.cell_count(); ++t)
    out.values[t] = fractional_integral_at(fs, alpha, grid.target_point(t));
  return out;
}

} // namespace weaklab
