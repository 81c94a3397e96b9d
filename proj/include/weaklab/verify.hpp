#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weaklab/norms.hpp"
#include "weaklab/operators.hpp"

namespace weaklab {

enum class TheoremId {
  Sawyer11,
  LemmaPointwise,
  ThmMax,
  ThmIMax,
  ThmExtrap,
  MoenA1,
  VectorValued42,
  Thm23Char,
};

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

/// Weight hypothesis variants of the mixed weak-type theorems:
/// A: u_vec^{mq} in A_(1,...,1) and nu v^q in A_inf;
/// B: every u_i^{mq} in A_1 and v^{mq} in A_inf.
enum class HypothesisMode { A, B };

std::string to_string(HypothesisMode m);
HypothesisMode mode_from_string(const std::string& s);

enum class ReportStatus { OK, HypothesisUnstable, Degenerate, Violation };

std::string to_string(ReportStatus s);

struct HypothesisComponent {
  MuckenhouptReport report;
  bool gating = true; // counted toward the instance's hypothesis verdict
};

struct TheoremParams {
  int m = 1;
  int n = 1;
  double alpha = 0.0;
  double q = 1.0;
  double r = 0.0; // vector-valued aggregate exponent, 0 when unused
  double s = 0.0; // Moen integrability exponent, 0 when unused
  int grid_cells = 0;
  double half_width = 1.0;
  CubeFamilyKind family = CubeFamilyKind::AllCubes;
  HypothesisMode mode = HypothesisMode::B;
};

/// One theorem instance: hypothesis evidence, both sides, the empirical
/// constant and the threshold sweep behind the weak norm.
struct InequalityReport {
  TheoremId theorem = TheoremId::ThmMax;
  TheoremParams params;
  std::vector<HypothesisComponent> hypothesis;
  double lhs = 0.0;
  double rhs = 0.0;
  double empirical_constant = 0.0;
  std::vector<std::pair<double, double>> sweep;
  ReportStatus status = ReportStatus::OK;
};

/// Evaluates the weight-class constants behind both hypothesis modes of
/// the fractional theorems; gating marks the components of `mode`.
std::vector<HypothesisComponent> hypothesis_check(
    std::span<const Weight> us, const Weight& v, double alpha,
    HypothesisMode mode, CubeFamilyKind family,
    std::span<const double> p_ladder);

struct PointwiseLemmaResult {
  double max_violation = 0.0; // max over cells of (lhs-rhs)/(1+rhs)
  std::int64_t argmax_cell = 0;
  double lhs_at_argmax = 0.0;
  double rhs_at_argmax = 0.0;
  ReportStatus status = ReportStatus::OK;
};

/// Pointwise estimate M_alpha(f_vec) <= M(f_i u_i^{1-mq})^{1/(mq)} *
/// prod (int f_i u_i)^{alpha/(mn)}, both maximal operators over the same
/// cube family; holds cube-by-cube (discrete Hoelder), so the violation
/// must stay at rounding level.
PointwiseLemmaResult verify_lemma_pointwise(std::span<const SampledFunction> fs,
                                            std::span<const Weight> us,
                                            double alpha,
                                            CubeFamilyKind family);

InequalityReport verify_theorem_max(std::span<const SampledFunction> fs,
                                    std::span<const Weight> us,
                                    const Weight& v, double alpha,
                                    HypothesisMode mode, CubeFamilyKind family,
                                    std::span<const double> p_ladder);

InequalityReport verify_theorem_imax(std::span<const SampledFunction> fs,
                                     std::span<const WeightFamily> us,
                                     const WeightFamily& v, double alpha,
                                     HypothesisMode mode,
                                     CubeFamilyKind family,
                                     std::span<const double> p_ladder,
                                     bool override_guard = false);

InequalityReport verify_extrapolation(std::span<const SampledFunction> fs,
                                      std::span<const WeightFamily> us,
                                      const WeightFamily& v, double alpha,
                                      CubeFamilyKind family,
                                      std::span<const double> p_ladder,
                                      bool override_guard = false);

InequalityReport verify_moen(std::span<const SampledFunction> fs,
                             const WeightFamily& w, double alpha, double s,
                             CubeFamilyKind family,
                             std::span<const double> p_ladder,
                             bool override_guard = false);

InequalityReport verify_sawyer(const SampledFunction& f, const Weight& u,
                               const Weight& v, CubeFamilyKind family);

InequalityReport verify_vector_valued(
    std::span<const std::vector<SampledFunction>> f_families,
    std::span<const WeightFamily> us, const WeightFamily& v, double alpha,
    double r, HypothesisMode mode, CubeFamilyKind family,
    std::span<const double> p_ladder, bool override_guard = false);

struct ProofChainResult {
  double max_discrepancy = 0.0; // 0 when the containment holds everywhere
  ReportStatus status = ReportStatus::OK;
};

/// Checks the level-set containment the proof route rests on:
/// {M_alpha/v > lambda} is contained in
/// {M(f_i u_i^{1-mq})/v^{mq} > (lambda/prod(int f_i u_i)^{alpha/(mn)})^{mq}}
/// for every lambda in the distinct-value ladder.
ProofChainResult proof_chain_check(std::span<const SampledFunction> fs,
                                   std::span<const Weight> us, const Weight& v,
                                   double alpha, CubeFamilyKind family);

/// Independently coded m = 1 specialization (the p = 1 case of the
/// single-linear mixed bound): single-linear maximal path, direct algebra.
InequalityReport verify_bcp_p1(const SampledFunction& f, const Weight& u,
                               const Weight& v, double alpha,
                               CubeFamilyKind family);

/// Piecewise-constant test function: constant background plus box bumps.
struct FunctionSpec {
  struct Bump {
    Box box;
    double height = 1.0;
    bool operator==(const Bump&) const = default;
  };
  double constant = 0.0;
  std::vector<Bump> bumps;

  SampledFunction sample(const Grid& grid) const;
  bool operator==(const FunctionSpec&) const = default;
};

/// Grid-independent description of one theorem experiment.
struct TheoremInstance {
  TheoremId theorem = TheoremId::ThmMax;
  int m = 1;
  int dim = 1;
  double alpha = 0.0;
  double half_width = 1.0;
  CubeFamilyKind family = CubeFamilyKind::AllCubes;
  HypothesisMode mode = HypothesisMode::B;
  std::vector<FunctionSpec> functions;
  std::vector<std::vector<FunctionSpec>> function_families; // VectorValued42
  std::vector<WeightFamily> u;
  WeightFamily v = WeightFamily::constant(1.0);
  WeightFamily moen_w = WeightFamily::constant(1.0);
  double moen_s = 1.0;
  double r = 2.0;
  bool override_guards = false;

  bool operator==(const TheoremInstance&) const = default;
};

InequalityReport evaluate_instance(const TheoremInstance& inst, int grid_cells,
                                   std::span<const double> p_ladder);

/// One instance across a grid ladder: per-N reports, the stability verdict
/// of the empirical constant, and hypothesis verdicts across N.
struct RefinedReport {
  std::vector<int> grid_sizes;
  std::vector<InequalityReport> per_grid;
  std::vector<double> constants;
  StabilityVerdict constant_verdict = StabilityVerdict::Unassessed;
  std::vector<HypothesisComponent> hypothesis; // finest grid, verdicts filled
  bool hypothesis_stable = false;
  ReportStatus status = ReportStatus::OK;
};

RefinedReport run_refinement(const TheoremInstance& inst,
                             std::span<const int> grid_sizes,
                             const StabilityProtocol& protocol,
                             std::span<const double> p_ladder);

} // namespace weaklab
