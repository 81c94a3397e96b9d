#include "weaklab/report_io.hpp"

#include <cstdio>
#include <fstream>

#include "weaklab/version.hpp"

namespace weaklab {

using nlohmann::json;

json to_json(const Cube& q) {
  return {{"origin", {q.origin[0], q.origin[1]}},
          {"side_cells", q.side_cells}};
}

json to_json(const MuckenhouptReport& rep) {
  json j;
  j["class"] = to_string(rep.cls);
  j["constant"] = rep.constant;
  j["attaining_cube"] = to_json(rep.attaining_cube);
  j["family"] = to_string(rep.family);
  j["verdict"] = to_string(rep.verdict);
  if (rep.cls == WeightClass::Ap || rep.cls == WeightClass::AinfProxy)
    j["p"] = rep.p;
  if (rep.cls == WeightClass::AvecP) j["P"] = rep.exponents;
  if (!rep.target.empty()) j["target"] = rep.target;
  if (!rep.sweep_constants.empty()) {
    j["constants_by_grid"] = {{"grids", rep.sweep_grids},
                              {"values", rep.sweep_constants}};
  }
  return j;
}

json to_json(const HypothesisComponent& comp) {
  json j = to_json(comp.report);
  j["gating"] = comp.gating;
  return j;
}

json to_json(const InequalityReport& rep) {
  json j;
  j["theorem"] = to_string(rep.theorem);
  j["params"] = {{"m", rep.params.m},
                 {"n", rep.params.n},
                 {"alpha", rep.params.alpha},
                 {"q", rep.params.q},
                 {"r", rep.params.r},
                 {"s", rep.params.s},
                 {"grid_cells", rep.params.grid_cells},
                 {"half_width", rep.params.half_width},
                 {"family", to_string(rep.params.family)},
                 {"mode", to_string(rep.params.mode)}};
  json hyp = json::array();
  for (const auto& comp : rep.hypothesis) hyp.push_back(to_json(comp));
  j["hypothesis"] = hyp;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["empirical_constant"] = rep.empirical_constant;
  json sweep = json::array();
  for (const auto& [t, v] : rep.sweep) sweep.push_back({t, v});
  j["sweep"] = sweep;
  j["status"] = to_string(rep.status);
  return j;
}

json to_json(const RefinedReport& rep) {
  json j;
  j["grids"] = rep.grid_sizes;
  json per = json::array();
  for (const auto& r : rep.per_grid) per.push_back(to_json(r));
  j["per_grid"] = per;
  j["constants"] = rep.constants;
  j["constant_verdict"] = to_string(rep.constant_verdict);
  json hyp = json::array();
  for (const auto& comp : rep.hypothesis) hyp.push_back(to_json(comp));
  j["hypothesis"] = hyp;
  j["hypothesis_stable"] = rep.hypothesis_stable;
  j["status"] = to_string(rep.status);
  return j;
}

json to_json(const Theorem23Report& rep) {
  json comps = json::array();
  for (const auto& c : rep.components) comps.push_back(to_json(c));
  return {{"a_vec", to_json(rep.avec)},
          {"nu", to_json(rep.nu)},
          {"components", comps}};
}

json report_envelope(const RunConfig& config) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["config_hash"] = config_hash(config);
  j["grid"] = {{"dim", config.grid.dim},
               {"half_width", config.grid.half_width},
               {"cells", config.grid.cells}};
  j["family"] = to_string(config.family);
  j["seed"] = config.seed;
  return j;
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

} // namespace weaklab
