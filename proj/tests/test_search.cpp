#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "weaklab/search.hpp"

using namespace weaklab;
using namespace weaklab::testing;

namespace {

SearchSpace small_space() {
  SearchSpace space;
  space.base.theorem = TheoremId::ThmMax;
  space.base.m = 1;
  space.base.alpha = 0.5;
  FunctionSpec f;
  f.bumps.push_back({Box{{0.0, 0}, {0.5, 0}}, 1.0});
  space.base.functions = {f};
  space.base.u = {WeightFamily::constant(1.0)};
  space.params = {{"u1.exponent", -0.4, 0.0}};
  space.grid_sizes = {32, 64};
  return space;
}

bool records_equal(const EvalRecord& a, const EvalRecord& b) {
  return a.params == b.params && a.objective == b.objective &&
         a.hypothesis_stable == b.hypothesis_stable &&
         a.constant_verdict == b.constant_verdict && a.status == b.status;
}

} // namespace

TEST_CASE("project clamps to bounds and integrability") {
  SearchSpace space = small_space();
  // q = 2, mq = 2 here, so u exponents must stay above -1/2
  space.params = {{"u1.exponent", -2.0, 0.0}};
  const double v[] = {-2.0};
  auto p = space.project(v);
  CHECK(p[0] >= -0.5);

  space.params = {{"u1.exponent", -0.4, 0.0}};
  const double inside[] = {-0.2};
  CHECK(space.project(inside) == std::vector<double>{-0.2});

  // idempotence on random points
  SplitMix rng{7};
  for (int it = 0; it < 50; ++it) {
    const double x[] = {rng.uniform(-3.0, 1.0)};
    auto once = space.project(x);
    CHECK(space.project(once) == once);
  }
}

TEST_CASE("project reports an empty feasible set") {
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", -2.0, -1.9}}; // entirely below -n/(mq)
  const double v[] = {-2.0};
  CHECK_THROWS_AS(space.project(v), std::invalid_argument);
}

TEST_CASE("instantiate maps parameters onto families") {
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", -0.4, 0.0},
                  {"f1.height", 0.5, 2.0},
                  {"f1.hi", 0.25, 1.0}};
  const double v[] = {-0.25, 1.5, 0.75};
  TheoremInstance inst = space.instantiate(v);
  CHECK(inst.u[0] == WeightFamily::power(-0.25));
  CHECK(inst.functions[0].bumps[0].height == 1.5);
  CHECK(inst.functions[0].bumps[0].box.hi[0] == 0.75);

  // exponent 0 collapses to the constant family
  const double zero[] = {0.0, 1.0, 0.5};
  CHECK(space.instantiate(zero).u[0] == WeightFamily::constant(1.0));
}

TEST_CASE("sweep: three points on one axis") {
  SearchSpace space = small_space();
  auto rows = sweep(space, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].params[0] == -0.4);
  CHECK(rows[1].params[0] == -0.2);
  CHECK(rows[2].params[0] == 0.0);
  for (const auto& row : rows) {
    CHECK(std::isfinite(row.objective));
    CHECK(row.hypothesis_stable); // all three exponents are A_1-friendly
  }
}

TEST_CASE("degenerate sweep equals the single verify value") {
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", 0.0, 0.0}}; // pinned axis
  auto rows = sweep(space, 3);
  REQUIRE(rows.size() == 1);
  RefinedReport direct = run_refinement(space.base, space.grid_sizes,
                                        space.protocol, space.p_ladder);
  CHECK(rows[0].objective == direct.constants.back());
}

TEST_CASE("sweep refuses over-budget lattices") {
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", -0.4, 0.0}, {"v.exponent", -0.4, 0.0}};
  space.budget = 5;
  CHECK_THROWS_AS(sweep(space, 3), budget_error); // needs 9 > 5
  CHECK_THROWS_AS(sweep(space, 1), std::invalid_argument);
}

TEST_CASE("sweep across the integrability boundary records growth") {
  // m = 1, alpha = 1/2: u^{mq} = u^2, boundary at exponent -1/2
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", -0.49, -0.1}};
  auto rows = sweep(space, 4);
  REQUIRE(rows.size() == 4);
  // the row nearest the boundary carries the largest constant
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[0].objective >= rows[i].objective - 1e-12);
  CHECK(rows[0].objective > rows.back().objective * 1.05);
}

TEST_CASE("hypothesis-unstable rows are retained and flagged") {
  // positive exponents push u^{mq} out of A_1 with power-law divergence
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", 0.3, 0.8}};
  space.grid_sizes = {32, 64, 128};
  auto rows = sweep(space, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK_FALSE(row.hypothesis_stable);
    CHECK(row.status == ReportStatus::HypothesisUnstable);
    CHECK(std::isfinite(row.objective)); // telemetry, not dropped
  }
}

TEST_CASE("hill climb on a flat axis keeps the initial best") {
  SearchSpace space = small_space();
  // scaling the bump height rescales both sides; the constant is invariant
  space.params = {{"f1.height", 0.5, 2.0}};
  const double init[] = {1.0};
  SearchState state = hill_climb(space, init, 8, 0.25, 99);
  CHECK(state.history.size() == 9);
  CHECK(rel_diff(state.best_objective, state.history[0].objective) <= 1e-12);
}

TEST_CASE("hill climb is deterministic for a fixed seed") {
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", -0.45, 0.0}, {"v.exponent", -0.2, 0.0}};
  const double init[] = {-0.1, -0.1};
  SearchState a = hill_climb(space, init, 10, 0.3, 12345);
  SearchState b = hill_climb(space, init, 10, 0.3, 12345);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i)
    CHECK(records_equal(a.history[i], b.history[i]));
  CHECK(a.best_params == b.best_params);
  CHECK(a.best_objective == b.best_objective);
}

TEST_CASE("hill climb from the best sweep row dominates the sweep") {
  SearchSpace space = small_space();
  space.params = {{"u1.exponent", -0.45, 0.0}, {"v.exponent", -0.2, 0.0}};
  auto rows = sweep(space, 2);
  const EvalRecord* best = nullptr;
  for (const auto& r : rows)
    if (r.hypothesis_stable && (!best || r.objective > best->objective))
      best = &r;
  REQUIRE(best != nullptr);
  SearchState state = hill_climb(space, best->params, 6, 0.2, 7);
  CHECK(state.best_objective >= best->objective - 1e-12);
  for (const auto& r : rows)
    if (r.hypothesis_stable)
      CHECK(state.best_objective >= r.objective - 1e-12);
}

TEST_CASE("hill climb rejects an out-of-bounds start") {
  SearchSpace space = small_space();
  const double bad[] = {-3.0};
  CHECK_THROWS_AS(hill_climb(space, bad, 5, 0.25, 1), std::invalid_argument);
}

TEST_CASE("every history row carries verdicts") {
  SearchSpace space = small_space();
  const double init[] = {-0.2};
  SearchState state = hill_climb(space, init, 4, 0.25, 3);
  for (const auto& rec : state.history) {
    CHECK(rec.constant_verdict != StabilityVerdict::Unassessed);
    CHECK(rec.params.size() == 1);
  }
}
