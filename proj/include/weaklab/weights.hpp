#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weaklab/lattice.hpp"

namespace weaklab {

/// Nonnegative cell-valued function on a grid.
struct SampledFunction {
  Grid grid;
  std::vector<double> values;
};

/// Validates finiteness and nonnegativity.
SampledFunction make_sampled(const Grid& grid, std::vector<double> values);

/// Strictly positive sampled function.
struct Weight {
  SampledFunction fn;

  const Grid& grid() const { return fn.grid; }
  const std::vector<double>& values() const { return fn.values; }
};

Weight make_weight(SampledFunction fn);
/// Cellwise power of a weight (stays strictly positive).
Weight pow_weight(const Weight& w, double exponent);
/// Cellwise product of weights on the same grid (optionally powered).
Weight product_weight(std::span<const Weight> ws,
                      std::span<const double> exponents);

/// Half-open axis-aligned box in domain coordinates.
struct Box {
  Point lo{0.0, 0.0};
  Point hi{0.0, 0.0};

  bool contains(const Point& p, int dim) const {
    for (int a = 0; a < dim; ++a)
      if (p[a] < lo[a] || p[a] >= hi[a]) return false;
    return true;
  }
  bool operator==(const Box&) const = default;
};

/// Parametric weight family: Constant(c), Power(a) = |x|^a with the
/// Euclidean norm of the cell center, products, and piecewise composites.
class WeightFamily {
public:
  enum class Kind { Constant, Power, Product, Piecewise };

  static WeightFamily constant(double value);
  static WeightFamily power(double exponent);
  static WeightFamily product(std::vector<WeightFamily> factors);
  static WeightFamily piecewise(
      std::vector<std::pair<Box, WeightFamily>> pieces);

  WeightFamily() = default; // Constant(1)

  Kind kind() const { return kind_; }
  double value() const { return value_; }           // Constant
  double exponent() const { return exponent_; }     // Power
  const std::vector<WeightFamily>& factors() const { return factors_; }
  const std::vector<std::pair<Box, WeightFamily>>& pieces() const {
    return pieces_;
  }

  /// Pointwise power, computed structurally (Power(a)^e = Power(a*e)).
  WeightFamily pow(double e) const;

  double evaluate(const Point& p, int dim) const;

  /// Total |x|-exponent when the family is a product of powers/constants.
  std::optional<double> power_exponent() const;
  /// Local integrability near 0: total exponent > -n. Label only; the
  /// boundary case a == -n samples fine on the staggered grid.
  bool locally_integrable(int dim) const;
  /// Classical A_1 eligibility label for power weights: -n < a <= 0.
  bool a1_eligible(int dim) const;

  /// Throws when sampling cannot be meaningful: Constant <= 0, or a
  /// power exponent strictly below -n.
  void validate_for_sampling(int dim) const;

  bool operator==(const WeightFamily&) const;

private:
  Kind kind_ = Kind::Constant;
  double value_ = 1.0;
  double exponent_ = 0.0;
  std::vector<WeightFamily> factors_;
  std::vector<std::pair<Box, WeightFamily>> pieces_;
};

/// Samples the family at cell centers.
Weight sample(const WeightFamily& family, const Grid& grid);
/// Samples at the quarter-cell-shifted target points.
std::vector<double> sample_at_targets(const WeightFamily& family,
                                      const Grid& grid);

enum class StabilityVerdict { Stable, Divergent, Inconclusive, Unassessed };

std::string to_string(StabilityVerdict v);

/// Refinement-stability thresholds; a constant is stable when consecutive
/// N -> 2N ratios stay within stable_ratio, divergent when every ratio
/// is at least divergent_ratio.
struct StabilityProtocol {
  double stable_ratio = 1.5;
  double divergent_ratio = 1.8;
};

StabilityVerdict assess_stability(std::span<const double> constants,
                                  const StabilityProtocol& protocol = {});

enum class WeightClass { A1, Ap, AinfProxy, AvecP };

std::string to_string(WeightClass c);

/// One weight-class constant estimate with the attaining cube.
struct MuckenhouptReport {
  WeightClass cls = WeightClass::A1;
  double p = 0.0;                  // Ap exponent, or the attaining ladder p
  std::vector<double> exponents;   // AvecP vector P
  double constant = 1.0;
  Cube attaining_cube;
  CubeFamilyKind family = CubeFamilyKind::AllCubes;
  StabilityVerdict verdict = StabilityVerdict::Unassessed;
  std::vector<double> sweep_constants; // per grid size when refined
  std::vector<int> sweep_grids;
  std::string target; // label of the weight the constant refers to
};

/// A_1 constant: max over family cubes of avg(w)/min(w).
MuckenhouptReport a1_constant(const Weight& w, CubeFamilyKind family);

/// A_p constant: max over cubes of avg(w) * avg(w^{1-p'})^{p-1}, p > 1.
MuckenhouptReport ap_constant(const Weight& w, double p,
                              CubeFamilyKind family);

/// A_inf proxy: min over the p ladder of ap_constant; records attaining p.
MuckenhouptReport ainf_proxy(const Weight& w, CubeFamilyKind family,
                             std::span<const double> p_ladder);

/// Multilinear A_P constant with the (inf_Q w_i)^{-1} convention at p_i = 1.
MuckenhouptReport multilinear_ap_constant(std::span<const Weight> ws,
                                          std::span<const double> pvec,
                                          CubeFamilyKind family);

/// Characterization of A_P via A_{mp}(nu_w) and A_{mp_i'}(w_i^{1-p_i'});
/// p_i = 1 components use w_i^{1/m} in A_1.
struct Theorem23Report {
  MuckenhouptReport avec;
  MuckenhouptReport nu;
  std::vector<MuckenhouptReport> components;
};

Theorem23Report check_theorem23(std::span<const Weight> ws,
                                std::span<const double> pvec,
                                CubeFamilyKind family);

/// Evaluates a single-grid constant across a grid ladder and attaches the
/// refinement-stability verdict to the finest report.
MuckenhouptReport refine_constant(
    const std::function<MuckenhouptReport(const Grid&)>& eval, int dim,
    double half_width, std::span<const int> grid_sizes,
    const StabilityProtocol& protocol);

} // namespace weaklab
