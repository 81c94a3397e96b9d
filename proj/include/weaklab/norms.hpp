#pragma once

#include <span>
#include <utility>
#include <vector>

#include "weaklab/weights.hpp"

namespace weaklab {

/// Positive measure with a cellwise density: mu(cell) = density * |cell|.
struct WeightedMeasure {
  Grid grid;
  std::vector<double> cell_mass;
};

WeightedMeasure make_measure(const Grid& grid,
                             std::span<const double> density);

/// mu{ f > t }, strict inequality.
double distribution(const SampledFunction& f, const WeightedMeasure& mu,
                    double t);

struct WeakNormResult {
  double q = 1.0;
  double value = 0.0;
  double attaining_level = 0.0;
};

/// Exact weak L^{q,inf}(mu) quasi-norm of a piecewise-constant function:
/// sup_{t>0} t mu{f>t}^{1/q} = max over distinct values v of
/// v mu{f>=v}^{1/q} (the sup is approached as t increases to v).
WeakNormResult weak_norm(const SampledFunction& f, const WeightedMeasure& mu,
                         double q);

/// The (v, v mu{f>=v}^{1/q}) ladder over distinct values, descending.
std::vector<std::pair<double, double>> weak_norm_sweep(
    const SampledFunction& f, const WeightedMeasure& mu, double q);

/// Relative discrepancy of ||f||_{q,inf}^q == ||f^q||_{1,inf}; should be
/// at the rounding level (<= 1e-12), never larger.
double power_identity_check(const SampledFunction& f,
                            const WeightedMeasure& mu, double q);

/// Integral of f against the weight: sum f * u * |cell|.
double weighted_l1(const SampledFunction& f, const Weight& u);

} // namespace weaklab
