#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weaklab/verify.hpp"

namespace weaklab {

/// One tunable scalar of a search space. The name selects what it drives:
///   "u<i>.exponent"  power exponent of u_i
///   "v.exponent"     power exponent of v
///   "w.exponent"     power exponent of the Moen weight
///   "f<i>.lo" / "f<i>.hi" / "f<i>.height"  first-bump box of slot i
struct ParamDef {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const ParamDef&) const = default;
};

/// Parametric family of theorem instances plus bounds and the grid ladder
/// the objective (the empirical constant) is evaluated on.
struct SearchSpace {
  TheoremInstance base;
  std::vector<ParamDef> params;
  std::vector<int> grid_sizes{64, 128, 256};
  StabilityProtocol protocol;
  std::vector<double> p_ladder{2, 4, 8, 16};
  int budget = 512;

  /// Clamps to bounds and to the integrability region (mq a > -n for the
  /// exponent of u_i, and likewise for v and w); idempotent.
  std::vector<double> project(std::span<const double> values) const;

  /// Builds the concrete instance for a parameter vector.
  TheoremInstance instantiate(std::span<const double> values) const;
};

struct EvalRecord {
  std::vector<double> params;
  double objective = 0.0; // empirical constant at the finest grid
  bool hypothesis_stable = false;
  StabilityVerdict constant_verdict = StabilityVerdict::Unassessed;
  ReportStatus status = ReportStatus::OK;
};

/// Full-factorial sweep; rows with unstable hypotheses are kept, flagged.
/// Refuses (budget_error) when the lattice exceeds the configured budget.
std::vector<EvalRecord> sweep(const SearchSpace& space, int steps_per_axis);

struct SearchState {
  std::vector<double> best_params;
  double best_objective = 0.0;
  std::vector<EvalRecord> history;
  std::uint64_t seed = 0;
};

/// Coordinate-wise hill climb with multiplicative step decay on rejection.
/// The objective only counts hypothesis-stable evaluations; deterministic
/// for a fixed seed.
SearchState hill_climb(const SearchSpace& space,
                       std::span<const double> initial, int max_steps,
                       double step_scale, std::uint64_t seed);

} // namespace weaklab
