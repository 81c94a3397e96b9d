#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "weaklab/norms.hpp"

using namespace weaklab;
using namespace weaklab::testing;

namespace {

WeightedMeasure lebesgue(const Grid& g) {
  return make_measure(g, std::vector<double>(g.cell_count(), 1.0));
}

} // namespace

TEST_CASE("distribution basics") {
  Grid g = build_grid(1, 1.0, 64);
  SampledFunction one = make_sampled(g, std::vector<double>(64, 1.0));
  WeightedMeasure mu = lebesgue(g);
  CHECK(distribution(one, mu, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(distribution(one, mu, 1.0) == 0.0); // strict inequality
  CHECK_THROWS_AS(distribution(one, mu, -0.1), std::invalid_argument);
}

TEST_CASE("distribution matches the naive scan exactly") {
  SplitMix rng{99};
  Grid g = build_grid(1, 1.0, 64);
  auto f = random_function(g, rng);
  Weight density = random_weight(g, rng);
  WeightedMeasure mu = make_measure(g, density.values());
  for (int it = 0; it < 20; ++it) {
    double t = rng.next_unit();
    double naive = 0.0;
    for (std::int64_t c = 0; c < g.cell_count(); ++c)
      if (f.values[c] > t) naive += mu.cell_mass[c];
    CHECK(distribution(f, mu, t) == naive);
  }
}

TEST_CASE("distribution is non-increasing and right-continuous on levels") {
  SplitMix rng{123};
  Grid g = build_grid(1, 1.0, 64);
  auto f = random_function(g, rng);
  WeightedMeasure mu = lebesgue(g);
  std::vector<double> levels = f.values;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    double d = distribution(f, mu, levels[i]);
    CHECK(d <= prev);
    prev = d;
    // constant between consecutive levels
    if (i + 1 < levels.size()) {
      double mid = 0.5 * (levels[i] + levels[i + 1]);
      CHECK(distribution(f, mu, mid) == d);
    }
  }
}

TEST_CASE("weak norm of an indicator") {
  Grid g = build_grid(1, 1.0, 64);
  std::vector<double> values(64, 0.0);
  for (int i = 16; i < 32; ++i) values[i] = 1.0; // 16 cells, mass 0.5
  SampledFunction f = make_sampled(g, std::move(values));
  WeightedMeasure mu = lebesgue(g);
  for (double q : {0.5, 1.0, 2.0}) {
    WeakNormResult r = weak_norm(f, mu, q);
    CHECK(r.value == doctest::Approx(std::pow(0.5, 1.0 / q)).epsilon(1e-14));
    CHECK(r.attaining_level == 1.0);
  }
}

TEST_CASE("weak norm of a two-level function") {
  // value 2 on mass 0.1 and value 1 on mass 0.9 at q=1: max(0.2, 1.0)
  Grid g = build_grid(1, 1.0, 8);
  std::vector<double> values(8, 1.0);
  values[0] = 2.0;
  std::vector<double> density(8, 0.9 / (2.0 - 0.25));
  density[0] = 0.4; // 0.4 * 0.25 = 0.1
  SampledFunction f = make_sampled(g, std::move(values));
  WeightedMeasure mu = make_measure(g, density);
  WeakNormResult r = weak_norm(f, mu, 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.attaining_level == 1.0);
}

TEST_CASE("weak norm edge cases") {
  Grid g = build_grid(1, 1.0, 8);
  SampledFunction zero = make_sampled(g, std::vector<double>(8, 0.0));
  WeightedMeasure mu = lebesgue(g);
  WeakNormResult r = weak_norm(zero, mu, 1.0);
  CHECK(r.value == 0.0);
  CHECK(r.attaining_level == 0.0);
  CHECK_THROWS_AS(weak_norm(zero, mu, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(weak_norm(zero, mu, -1.0), std::invalid_argument);
}

TEST_CASE("weak norm against a threshold scan") {
  SplitMix rng{321};
  Grid g = build_grid(1, 1.0, 64);
  for (int it = 0; it < 5; ++it) {
    auto f = random_function(g, rng);
    Weight density = random_weight(g, rng);
    WeightedMeasure mu = make_measure(g, density.values());
    for (double q : {0.5, 1.0, 2.0}) {
      double exact = weak_norm(f, mu, q).value;
      // dense grid plus a probe just under each distinct level
      double scanned = 0.0;
      double top = *std::max_element(f.values.begin(), f.values.end());
      for (int k = 1; k <= 10000; ++k) {
        double t = top * k / 10000.0 * (1.0 - 1e-12);
        scanned =
            std::max(scanned, t * std::pow(distribution(f, mu, t), 1.0 / q));
      }
      for (double v : f.values)
        if (v > 0) {
          double t = v * (1.0 - 1e-12);
          scanned =
              std::max(scanned, t * std::pow(distribution(f, mu, t), 1.0 / q));
        }
      CHECK(rel_diff(exact, scanned) <= 1e-9);
      CHECK(exact >= scanned - 1e-9 * scanned);
    }
  }
}

TEST_CASE("weak norm homogeneity") {
  SplitMix rng{11};
  Grid g = build_grid(1, 1.0, 64);
  auto f = random_function(g, rng);
  WeightedMeasure mu = lebesgue(g);
  double base = weak_norm(f, mu, 2.0).value;
  for (double c : {0.5, 2.0, 7.5}) {
    SampledFunction scaled{g, f.values};
    for (double& v : scaled.values) v *= c;
    CHECK(rel_diff(weak_norm(scaled, mu, 2.0).value, c * base) <= 1e-12);
  }
}

TEST_CASE("weak norm below the strong norm (Chebyshev)") {
  SplitMix rng{22};
  Grid g = build_grid(1, 1.0, 64);
  for (int it = 0; it < 100; ++it) {
    auto f = random_function(g, rng);
    Weight density = random_weight(g, rng);
    WeightedMeasure mu = make_measure(g, density.values());
    for (double q : {1.0, 2.0}) {
      double weak = weak_norm(f, mu, q).value;
      double strong = 0.0;
      for (std::int64_t c = 0; c < g.cell_count(); ++c)
        strong += std::pow(f.values[c], q) * mu.cell_mass[c];
      strong = std::pow(strong, 1.0 / q);
      CHECK(weak <= strong + 1e-9 * (1.0 + strong));
    }
  }
}

TEST_CASE("power identity: indicator, exactly") {
  Grid g = build_grid(1, 1.0, 64);
  std::vector<double> values(64, 0.0);
  for (int i = 0; i < 16; ++i) values[i] = 1.0;
  SampledFunction f = make_sampled(g, std::move(values));
  WeightedMeasure mu = lebesgue(g);
  CHECK(power_identity_check(f, mu, 0.5) == 0.0);
}

TEST_CASE("power identity: zero function") {
  Grid g = build_grid(1, 1.0, 8);
  SampledFunction zero = make_sampled(g, std::vector<double>(8, 0.0));
  CHECK(power_identity_check(zero, lebesgue(g), 0.5) == 0.0);
}

TEST_CASE("power identity on random data") {
  SplitMix rng{33};
  Grid g = build_grid(1, 1.0, 64);
  for (int it = 0; it < 25; ++it) {
    auto f = random_function(g, rng);
    Weight density = random_weight(g, rng);
    WeightedMeasure mu = make_measure(g, density.values());
    for (double q : {1.0 / 3.0, 0.5, 1.0, 2.0})
      CHECK(power_identity_check(f, mu, q) <= 1e-12);
  }
}

TEST_CASE("weighted L1") {
  Grid g = build_grid(1, 1.0, 64);
  SampledFunction one = make_sampled(g, std::vector<double>(64, 1.0));
  Weight u = make_weight({g, std::vector<double>(64, 1.0)});
  CHECK(weighted_l1(one, u) == doctest::Approx(2.0).epsilon(1e-14));

  std::vector<double> ind(64, 0.0);
  for (int i = 32; i < 64; ++i) ind[i] = 1.0; // [0,1)
  CHECK(weighted_l1(make_sampled(g, std::move(ind)), u) ==
        doctest::Approx(1.0).epsilon(1e-14));

  SplitMix rng{44};
  auto f = random_function(g, rng);
  Weight w = random_weight(g, rng);
  double naive = 0.0;
  for (std::int64_t c = 0; c < g.cell_count(); ++c)
    naive += f.values[c] * w.values()[c] * g.cell_measure();
  CHECK(rel_diff(weighted_l1(f, w), naive) <= 1e-13);

  Weight other = random_weight(build_grid(1, 1.0, 32), rng);
  CHECK_THROWS_AS(weighted_l1(f, other), std::invalid_argument);
}

TEST_CASE("measure validation") {
  Grid g = build_grid(1, 1.0, 8);
  std::vector<double> bad(8, 1.0);
  bad[3] = 0.0;
  CHECK_THROWS_AS(make_measure(g, bad), std::invalid_argument);
  std::vector<double> wrong(4, 1.0);
  CHECK_THROWS_AS(make_measure(g, wrong), std::invalid_argument);
}
