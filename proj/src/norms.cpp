#include "weaklab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace weaklab {

WeightedMeasure make_measure(const Grid& grid,
                             std::span<const double> density) {
  if (static_cast<std::int64_t>(density.size()) != grid.cell_count())
    throw std::invalid_argument("measure: density count mismatch");
  WeightedMeasure mu{grid, std::vector<double>(density.size())};
  const double cell = grid.cell_measure();
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (!(density[i] > 0) || !std::isfinite(density[i]))
      throw std::invalid_argument("measure: density must be positive");
    mu.cell_mass[i] = density[i] * cell;
  }
  return mu;
}

double distribution(const SampledFunction& f, const WeightedMeasure& mu,
                    double t) {
  if (!(f.grid == mu.grid))
    throw std::invalid_argument("distribution: mismatched grids");
  if (t < 0) throw std::invalid_argument("distribution: t must be >= 0");
  double mass = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (f.values[i] > t) mass += mu.cell_mass[i];
  return mass;
}

namespace {

// Distinct values of f in descending order with cumulative mass of
// {f >= v}; ties merged before the scan.
std::vector<std::pair<double, double>> level_ladder(
    const SampledFunction& f, const WeightedMeasure& mu) {
  std::vector<std::size_t> order(f.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (f.values[a] != f.values[b]) return f.values[a] > f.values[b];
    return a < b;
  });
  std::vector<std::pair<double, double>> ladder;
  long double cum = 0.0L;
  std::size_t i = 0;
  while (i < order.size()) {
    const double v = f.values[order[i]];
    while (i < order.size() && f.values[order[i]] == v) {
      cum += mu.cell_mass[order[i]];
      ++i;
    }
    ladder.emplace_back(v, static_cast<double>(cum));
  }
  return ladder;
}

} // namespace

WeakNormResult weak_norm(const SampledFunction& f, const WeightedMeasure& mu,
                         double q) {
  if (!(f.grid == mu.grid))
    throw std::invalid_argument("weak_norm: mismatched grids");
  if (!(q > 0)) throw std::invalid_argument("weak_norm: q must be positive");
  WeakNormResult out;
  out.q = q;
  for (const auto& [v, mass] : level_ladder(f, mu)) {
    if (!(v > 0)) break;
    double candidate = v * std::pow(mass, 1.0 / q);
    if (candidate > out.value) {
      out.value = candidate;
      out.attaining_level = v;
    }
  }
  return out;
}

std::vector<std::pair<double, double>> weak_norm_sweep(
    const SampledFunction& f, const WeightedMeasure& mu, double q) {
  if (!(q > 0)) throw std::invalid_argument("weak_norm: q must be positive");
  std::vector<std::pair<double, double>> sweep;
  for (const auto& [v, mass] : level_ladder(f, mu)) {
    if (!(v > 0)) break;
    sweep.emplace_back(v, v * std::pow(mass, 1.0 / q));
  }
  return sweep;
}

double power_identity_check(const SampledFunction& f,
                            const WeightedMeasure& mu, double q) {
  if (!(q > 0))
    throw std::invalid_argument("power_identity_check: q must be positive");
  const double lhs = std::pow(weak_norm(f, mu, q).value, q);
  SampledFunction fq{f.grid, f.values};
  for (double& v : fq.values) v = std::pow(v, q);
  const double rhs = weak_norm(fq, mu, 1.0).value;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

double weighted_l1(const SampledFunction& f, const Weight& u) {
  if (!(f.grid == u.grid()))
    throw std::invalid_argument("weighted_l1: mismatched grids");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += static_cast<long double>(f.values[i]) * u.values()[i];
  return static_cast<double>(acc) * f.grid.cell_measure();
}

} // namespace weaklab
