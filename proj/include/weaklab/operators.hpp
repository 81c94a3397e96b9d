#pragma once

#include <span>

#include "weaklab/weights.hpp"

namespace weaklab {

/// Arity, smoothing order and cube family of a maximal operator.
struct OperatorSpec {
  int m = 1;
  double alpha = 0.0;
  CubeFamilyKind family = CubeFamilyKind::AllCubes;
};

/// q = n / (mn - alpha), the weak-norm exponent tied to the operator.
double derived_q(int m, int n, double alpha);

/// Multi(sub)linear fractional maximal operator: at each cell the max over
/// family cubes Q containing it of prod_i |Q|^{alpha/(nm)} avg_Q(f_i).
/// Fast path via prefix tables.
SampledFunction maximal(std::span<const SampledFunction> fs,
                        const OperatorSpec& spec);

/// Ground-truth path: identical quantity by direct per-cube summation.
/// Guarded: n=1 AllCubes needs N <= 256, n=2 ShiftedDyadic needs N <= 32.
SampledFunction maximal_oracle(std::span<const SampledFunction> fs,
                               const OperatorSpec& spec);

/// Independently coded single-linear fractional maximal function (m = 1
/// reduction reference; naive sums, no prefix tables).
SampledFunction single_fractional_maximal(const SampledFunction& f,
                                          double alpha, CubeFamilyKind family);

/// Independently coded multi(sub)linear maximal function without the |Q|
/// power factor (alpha = 0 reduction reference).
SampledFunction multilinear_maximal_plain(std::span<const SampledFunction> fs,
                                          CubeFamilyKind family);

/// Kernel (sum_i |x-y_i|)^{alpha - mn}; throws when every y_i equals x.
double kernel(const Point& x, std::span<const Point> ys, double alpha, int m,
              int n);

/// Largest grid the multilinear fractional integral accepts by default.
int integral_guard_limit(int dim, int m);

/// Multilinear fractional integral by midpoint quadrature over source cell
/// centers, evaluated at the quarter-cell-shifted target points.
SampledFunction fractional_integral(std::span<const SampledFunction> fs,
                                    double alpha,
                                    bool override_guard = false);

/// Single-point evaluation (same quadrature), mostly for convergence tests.
double fractional_integral_at(std::span<const SampledFunction> fs,
                              double alpha, const Point& x);

} // namespace weaklab
