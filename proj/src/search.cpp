#include "weaklab/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weaklab/rng.hpp"

namespace weaklab {

namespace {

struct ParamTarget {
  enum class Kind { UExp, VExp, WExp, FLo, FHi, FHeight } kind;
  int slot = 0; // 0-based function/weight slot where applicable
};

ParamTarget parse_target(const std::string& name) {
  auto slot_of = [&](std::size_t prefix_len,
                     std::size_t suffix_len) {
    int slot = std::stoi(
        name.substr(prefix_len, name.size() - prefix_len - suffix_len));
    if (slot < 1) throw config_error("search param slot must be >= 1: " + name);
    return slot - 1;
  };
  if (name == "v.exponent") return {ParamTarget::Kind::VExp, 0};
  if (name == "w.exponent") return {ParamTarget::Kind::WExp, 0};
  if (name.starts_with("u") && name.ends_with(".exponent"))
    return {ParamTarget::Kind::UExp, slot_of(1, 9)};
  if (name.starts_with("f") && name.ends_with(".lo"))
    return {ParamTarget::Kind::FLo, slot_of(1, 3)};
  if (name.starts_with("f") && name.ends_with(".hi"))
    return {ParamTarget::Kind::FHi, slot_of(1, 3)};
  if (name.starts_with("f") && name.ends_with(".height"))
    return {ParamTarget::Kind::FHeight, slot_of(1, 7)};
  throw config_error("unknown search parameter: " + name);
}

} // namespace

std::vector<double> SearchSpace::project(
    std::span<const double> values) const {
  if (values.size() != params.size())
    throw std::invalid_argument("project: parameter count mismatch");
  const double n = static_cast<double>(base.dim);
  const double q = derived_q(base.m, base.dim, base.alpha);
  const double mq = base.m * q;

  std::vector<double> out(values.begin(), values.end());
  for (std::size_t k = 0; k < params.size(); ++k) {
    double lo = params[k].lo, hi = params[k].hi;
    ParamTarget target = parse_target(params[k].name);
    // u_i enters as u_i^{mq}, v as v^{mq}; keep the sampled exponent
    // strictly above -n.
    if (target.kind == ParamTarget::Kind::UExp ||
        target.kind == ParamTarget::Kind::VExp)
      lo = std::max(lo, -n / mq + 1e-9);
    if (target.kind == ParamTarget::Kind::WExp)
      lo = std::max(lo, -n + 1e-9);
    if (target.kind == ParamTarget::Kind::FHeight) lo = std::max(lo, 0.0);
    if (lo > hi)
      throw std::invalid_argument("project: empty feasible set for " +
                                  params[k].name);
    out[k] = std::clamp(out[k], lo, hi);
  }
  return out;
}

TheoremInstance SearchSpace::instantiate(
    std::span<const double> values) const {
  if (values.size() != params.size())
    throw std::invalid_argument("instantiate: parameter count mismatch");
  TheoremInstance inst = base;
  for (std::size_t k = 0; k < params.size(); ++k) {
    ParamTarget target = parse_target(params[k].name);
    double x = values[k];
    switch (target.kind) {
      case ParamTarget::Kind::UExp:
        if (target.slot >= static_cast<int>(inst.u.size()))
          throw config_error("search param references missing u slot");
        inst.u[target.slot] = x == 0.0 ? WeightFamily::constant(1.0)
                                       : WeightFamily::power(x);
        break;
      case ParamTarget::Kind::VExp:
        inst.v = x == 0.0 ? WeightFamily::constant(1.0)
                          : WeightFamily::power(x);
        break;
      case ParamTarget::Kind::WExp:
        inst.moen_w = x == 0.0 ? WeightFamily::constant(1.0)
                               : WeightFamily::power(x);
        break;
      case ParamTarget::Kind::FLo:
      case ParamTarget::Kind::FHi:
      case ParamTarget::Kind::FHeight: {
        if (target.slot >= static_cast<int>(inst.functions.size()))
          throw config_error("search param references missing f slot");
        FunctionSpec& spec = inst.functions[target.slot];
        if (spec.bumps.empty()) spec.bumps.push_back({});
        FunctionSpec::Bump& bump = spec.bumps.front();
        if (target.kind == ParamTarget::Kind::FLo)
          bump.box.lo[0] = x;
        else if (target.kind == ParamTarget::Kind::FHi)
          bump.box.hi[0] = x;
        else
          bump.height = x;
        break;
      }
    }
  }
  // Degenerate boxes (hi <= lo) mean an empty bump, which is legal input;
  // the instance simply evaluates as Degenerate.
  return inst;
}

namespace {

EvalRecord evaluate_point(const SearchSpace& space,
                          std::span<const double> values) {
  EvalRecord rec;
  rec.params.assign(values.begin(), values.end());
  RefinedReport rep = run_refinement(space.instantiate(values),
                                     space.grid_sizes, space.protocol,
                                     space.p_ladder);
  rec.objective = rep.constants.back();
  rec.hypothesis_stable = rep.hypothesis_stable;
  rec.constant_verdict = rep.constant_verdict;
  rec.status = rep.status;
  return rec;
}

bool usable(const EvalRecord& rec) {
  return rec.hypothesis_stable && rec.status != ReportStatus::Degenerate &&
         rec.status != ReportStatus::Violation && rec.objective > 0;
}

} // namespace

std::vector<EvalRecord> sweep(const SearchSpace& space, int steps_per_axis) {
  if (steps_per_axis < 2)
    throw std::invalid_argument("sweep: steps per axis must be >= 2");
  if (space.params.empty())
    throw std::invalid_argument("sweep: no parameters");
  double total = 1.0;
  for (std::size_t k = 0; k < space.params.size(); ++k) {
    int steps = space.params[k].lo == space.params[k].hi ? 1 : steps_per_axis;
    total *= steps;
  }
  if (total > space.budget)
    throw budget_error("sweep: needs " +
                       std::to_string(static_cast<long long>(total)) +
                       " evaluations, budget is " +
                       std::to_string(space.budget));

  std::vector<int> steps(space.params.size());
  for (std::size_t k = 0; k < space.params.size(); ++k)
    steps[k] = space.params[k].lo == space.params[k].hi ? 1 : steps_per_axis;

  std::vector<EvalRecord> rows;
  std::vector<int> index(space.params.size(), 0);
  while (true) {
    std::vector<double> values(space.params.size());
    for (std::size_t k = 0; k < space.params.size(); ++k) {
      const ParamDef& p = space.params[k];
      values[k] = steps[k] == 1
                      ? p.lo
                      : p.lo + (p.hi - p.lo) * index[k] / (steps[k] - 1);
    }
    rows.push_back(evaluate_point(space, space.project(values)));
    int axis = static_cast<int>(space.params.size()) - 1;
    while (axis >= 0 && ++index[axis] == steps[axis]) {
      index[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return rows;
}

SearchState hill_climb(const SearchSpace& space,
                       std::span<const double> initial, int max_steps,
                       double step_scale, std::uint64_t seed) {
  if (initial.size() != space.params.size())
    throw std::invalid_argument("hill_climb: parameter count mismatch");
  std::vector<double> start = space.project(initial);
  for (std::size_t k = 0; k < initial.size(); ++k)
    if (start[k] != initial[k])
      throw std::invalid_argument("hill_climb: initial point violates bounds");
  if (max_steps < 0 || 1 + max_steps > space.budget)
    throw budget_error("hill_climb: " + std::to_string(1 + max_steps) +
                       " evaluations exceed budget " +
                       std::to_string(space.budget));

  SearchState state;
  state.seed = seed;
  SplitMix rng{seed};

  std::vector<double> current = start;
  EvalRecord base_rec = evaluate_point(space, current);
  state.history.push_back(base_rec);
  state.best_params = current;
  state.best_objective = usable(base_rec) ? base_rec.objective : 0.0;
  bool has_best = usable(base_rec);

  std::vector<double> step(space.params.size());
  for (std::size_t k = 0; k < space.params.size(); ++k)
    step[k] = step_scale * (space.params[k].hi - space.params[k].lo);

  for (int it = 0; it < max_steps; ++it) {
    const std::size_t axis = it % space.params.size();
    if (step[axis] == 0.0) {
      // pin-down axis; burn the draw so histories stay aligned
      rng.next_unit();
      continue;
    }
    const double dir = rng.next_unit() < 0.5 ? -1.0 : 1.0;
    std::vector<double> proposal = current;
    proposal[axis] += dir * step[axis];
    proposal = space.project(proposal);

    EvalRecord rec = evaluate_point(space, proposal);
    state.history.push_back(rec);
    const bool accept =
        usable(rec) && (!has_best || rec.objective > state.best_objective);
    if (accept) {
      current = proposal;
      state.best_params = proposal;
      state.best_objective = rec.objective;
      has_best = true;
    } else {
      step[axis] *= 0.5;
    }
  }
  return state;
}

} // namespace weaklab
