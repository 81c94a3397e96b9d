#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "weaklab/search.hpp"

namespace weaklab {

struct GridConfig {
  int dim = 1;
  double half_width = 1.0;
  std::vector<int> cells{64, 128, 256}; // refinement ladder, coarse to fine

  bool operator==(const GridConfig&) const = default;
};

struct SweepConfig {
  TheoremId theorem = TheoremId::ThmMax;
  std::vector<ParamDef> params;
  int steps_per_axis = 3;
  int budget = 512;

  bool operator==(const SweepConfig&) const = default;
};

struct SearchConfig {
  TheoremId theorem = TheoremId::ThmMax;
  std::vector<ParamDef> params;
  std::vector<double> initial;
  int max_steps = 20;
  double step_scale = 0.25;
  int budget = 512;

  bool operator==(const SearchConfig&) const = default;
};

/// Whole-run configuration; JSON round-trips exactly.
struct RunConfig {
  GridConfig grid;
  CubeFamilyKind family = CubeFamilyKind::AllCubes;
  int m = 1;
  double alpha = 0.0;
  HypothesisMode mode = HypothesisMode::B;
  std::vector<double> p_ladder{2, 4, 8, 16};
  StabilityProtocol stability;
  std::vector<WeightFamily> u{WeightFamily::constant(1.0)};
  WeightFamily v = WeightFamily::constant(1.0);
  std::vector<FunctionSpec> functions{FunctionSpec{1.0, {}}};
  std::vector<std::vector<FunctionSpec>> function_families;
  WeightFamily moen_w = WeightFamily::constant(1.0);
  std::vector<double> moen_s{0.5, 1.0, 2.0};
  double vector_r = 2.0;
  std::vector<TheoremId> theorems{TheoremId::ThmMax};
  SweepConfig sweep;
  SearchConfig search;
  std::uint64_t seed = 0;
  bool override_guards = false;
  bool corrupt_prefix_for_test = false; // fault-injection hook

  bool operator==(const RunConfig& o) const;
};

bool operator==(const StabilityProtocol& a, const StabilityProtocol& b);

/// Parses/serializes the JSON schema; parse errors carry a field path.
RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& config);
RunConfig load_config_file(const std::filesystem::path& path);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const RunConfig& config);

/// Assembles the theorem instance this config describes.
TheoremInstance instance_from_config(const RunConfig& config, TheoremId id);

/// Assembles the sweep/search space (theorem taken from the sub-config).
SearchSpace space_from_config(const RunConfig& config, bool for_search);

} // namespace weaklab
