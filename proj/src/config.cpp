#include "weaklab/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace weaklab {

using nlohmann::json;

namespace {

json family_to_json(const WeightFamily& f) {
  switch (f.kind()) {
    case WeightFamily::Kind::Constant:
      return {{"kind", "constant"}, {"value", f.value()}};
    case WeightFamily::Kind::Power:
      return {{"kind", "power"}, {"exponent", f.exponent()}};
    case WeightFamily::Kind::Product: {
      json factors = json::array();
      for (const auto& g : f.factors()) factors.push_back(family_to_json(g));
      return {{"kind", "product"}, {"factors", factors}};
    }
    case WeightFamily::Kind::Piecewise: {
      json pieces = json::array();
      for (const auto& [box, fam] : f.pieces())
        pieces.push_back({{"box",
                           {{"lo", {box.lo[0], box.lo[1]}},
                            {"hi", {box.hi[0], box.hi[1]}}}},
                          {"family", family_to_json(fam)}});
      return {{"kind", "piecewise"}, {"pieces", pieces}};
    }
  }
  throw std::logic_error("unreachable");
}

Box box_from_json(const json& j) {
  Box box;
  auto lo = j.at("lo");
  auto hi = j.at("hi");
  box.lo[0] = lo.at(0).get<double>();
  box.hi[0] = hi.at(0).get<double>();
  if (lo.size() > 1) box.lo[1] = lo.at(1).get<double>();
  if (hi.size() > 1) box.hi[1] = hi.at(1).get<double>();
  return box;
}

WeightFamily family_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant")
    return WeightFamily::constant(j.at("value").get<double>());
  if (kind == "power")
    return WeightFamily::power(j.at("exponent").get<double>());
  if (kind == "product") {
    std::vector<WeightFamily> factors;
    for (const auto& g : j.at("factors")) factors.push_back(family_from_json(g));
    return WeightFamily::product(std::move(factors));
  }
  if (kind == "piecewise") {
    std::vector<std::pair<Box, WeightFamily>> pieces;
    for (const auto& p : j.at("pieces"))
      pieces.emplace_back(box_from_json(p.at("box")),
                          family_from_json(p.at("family")));
    return WeightFamily::piecewise(std::move(pieces));
  }
  throw config_error("weights: unknown family kind '" + kind + "'");
}

json function_to_json(const FunctionSpec& f) {
  json bumps = json::array();
  for (const auto& b : f.bumps)
    bumps.push_back({{"box",
                      {{"lo", {b.box.lo[0], b.box.lo[1]}},
                       {"hi", {b.box.hi[0], b.box.hi[1]}}}},
                     {"height", b.height}});
  return {{"constant", f.constant}, {"bumps", bumps}};
}

FunctionSpec function_from_json(const json& j) {
  FunctionSpec f;
  f.constant = j.value("constant", 0.0);
  if (j.contains("bumps"))
    for (const auto& b : j.at("bumps"))
      f.bumps.push_back(
          {box_from_json(b.at("box")), b.at("height").get<double>()});
  return f;
}

json params_to_json(const std::vector<ParamDef>& params) {
  json out = json::array();
  for (const auto& p : params)
    out.push_back({{"name", p.name}, {"lo", p.lo}, {"hi", p.hi}});
  return out;
}

std::vector<ParamDef> params_from_json(const json& j) {
  std::vector<ParamDef> out;
  for (const auto& p : j)
    out.push_back({p.at("name").get<std::string>(), p.at("lo").get<double>(),
                   p.at("hi").get<double>()});
  return out;
}

} // namespace

bool operator==(const StabilityProtocol& a, const StabilityProtocol& b) {
  return a.stable_ratio == b.stable_ratio &&
         a.divergent_ratio == b.divergent_ratio;
}

bool RunConfig::operator==(const RunConfig& o) const {
  return grid == o.grid && family == o.family && m == o.m && alpha == o.alpha &&
         mode == o.mode && p_ladder == o.p_ladder && stability == o.stability &&
         u == o.u && v == o.v && functions == o.functions &&
         function_families == o.function_families && moen_w == o.moen_w &&
         moen_s == o.moen_s && vector_r == o.vector_r &&
         theorems == o.theorems && sweep == o.sweep && search == o.search &&
         seed == o.seed && override_guards == o.override_guards &&
         corrupt_prefix_for_test == o.corrupt_prefix_for_test;
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["grid"] = {{"dim", c.grid.dim},
               {"half_width", c.grid.half_width},
               {"cells", c.grid.cells}};
  j["family"] = to_string(c.family);
  j["operator"] = {{"m", c.m}, {"alpha", c.alpha}};
  j["mode"] = to_string(c.mode);
  j["p_ladder"] = c.p_ladder;
  j["stability"] = {{"stable_ratio", c.stability.stable_ratio},
                    {"divergent_ratio", c.stability.divergent_ratio}};
  json us = json::array();
  for (const auto& u : c.u) us.push_back(family_to_json(u));
  j["weights"] = {{"u", us}, {"v", family_to_json(c.v)}};
  json fns = json::array();
  for (const auto& f : c.functions) fns.push_back(function_to_json(f));
  j["functions"] = fns;
  if (!c.function_families.empty()) {
    json fams = json::array();
    for (const auto& slot : c.function_families) {
      json one = json::array();
      for (const auto& f : slot) one.push_back(function_to_json(f));
      fams.push_back(one);
    }
    j["function_families"] = fams;
  }
  j["moen"] = {{"w", family_to_json(c.moen_w)}, {"s_values", c.moen_s}};
  j["vector_r"] = c.vector_r;
  json thms = json::array();
  for (TheoremId id : c.theorems) thms.push_back(to_string(id));
  j["theorems"] = thms;
  j["sweep"] = {{"theorem", to_string(c.sweep.theorem)},
                {"params", params_to_json(c.sweep.params)},
                {"steps_per_axis", c.sweep.steps_per_axis},
                {"budget", c.sweep.budget}};
  j["search"] = {{"theorem", to_string(c.search.theorem)},
                 {"params", params_to_json(c.search.params)},
                 {"initial", c.search.initial},
                 {"max_steps", c.search.max_steps},
                 {"step_scale", c.search.step_scale},
                 {"budget", c.search.budget}};
  j["seed"] = c.seed;
  j["override_guards"] = c.override_guards;
  if (c.corrupt_prefix_for_test) j["corrupt_prefix_for_test"] = true;
  return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config: JSON parse error: ") + e.what());
  }
  RunConfig c;
  try {
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.grid.dim = g.value("dim", 1);
      c.grid.half_width = g.value("half_width", 1.0);
      if (g.contains("cells"))
        c.grid.cells = g.at("cells").get<std::vector<int>>();
    }
    if (j.contains("family"))
      c.family = cube_family_from_string(j.at("family").get<std::string>());
    if (j.contains("operator")) {
      c.m = j.at("operator").value("m", 1);
      c.alpha = j.at("operator").value("alpha", 0.0);
    }
    if (j.contains("mode"))
      c.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("p_ladder"))
      c.p_ladder = j.at("p_ladder").get<std::vector<double>>();
    if (j.contains("stability")) {
      c.stability.stable_ratio = j.at("stability").value("stable_ratio", 1.5);
      c.stability.divergent_ratio =
          j.at("stability").value("divergent_ratio", 1.8);
    }
    if (j.contains("weights")) {
      c.u.clear();
      for (const auto& u : j.at("weights").at("u"))
        c.u.push_back(family_from_json(u));
      c.v = family_from_json(j.at("weights").at("v"));
    }
    if (j.contains("functions")) {
      c.functions.clear();
      for (const auto& f : j.at("functions"))
        c.functions.push_back(function_from_json(f));
    }
    if (j.contains("function_families")) {
      for (const auto& slot : j.at("function_families")) {
        std::vector<FunctionSpec> fam;
        for (const auto& f : slot) fam.push_back(function_from_json(f));
        c.function_families.push_back(std::move(fam));
      }
    }
    if (j.contains("moen")) {
      c.moen_w = family_from_json(j.at("moen").at("w"));
      if (j.at("moen").contains("s_values"))
        c.moen_s = j.at("moen").at("s_values").get<std::vector<double>>();
    }
    c.vector_r = j.value("vector_r", 2.0);
    if (j.contains("theorems")) {
      c.theorems.clear();
      for (const auto& t : j.at("theorems"))
        c.theorems.push_back(theorem_from_string(t.get<std::string>()));
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (s.contains("theorem"))
        c.sweep.theorem = theorem_from_string(s.at("theorem").get<std::string>());
      if (s.contains("params")) c.sweep.params = params_from_json(s.at("params"));
      c.sweep.steps_per_axis = s.value("steps_per_axis", 3);
      c.sweep.budget = s.value("budget", 512);
    }
    if (j.contains("search")) {
      const auto& s = j.at("search");
      if (s.contains("theorem"))
        c.search.theorem =
            theorem_from_string(s.at("theorem").get<std::string>());
      if (s.contains("params"))
        c.search.params = params_from_json(s.at("params"));
      if (s.contains("initial"))
        c.search.initial = s.at("initial").get<std::vector<double>>();
      c.search.max_steps = s.value("max_steps", 20);
      c.search.step_scale = s.value("step_scale", 0.25);
      c.search.budget = s.value("budget", 512);
    }
    c.seed = j.value("seed", std::uint64_t{0});
    c.override_guards = j.value("override_guards", false);
    c.corrupt_prefix_for_test = j.value("corrupt_prefix_for_test", false);
  } catch (const json::exception& e) {
    throw config_error(std::string("config: ") + e.what());
  }

  // Joint validity checks the modules rely on.
  if (c.grid.dim != 1 && c.grid.dim != 2)
    throw config_error("config: grid.dim must be 1 or 2");
  if (c.grid.cells.empty())
    throw config_error("config: grid.cells must not be empty");
  for (int n : c.grid.cells)
    if (n < 4 || (n & (n - 1)) != 0)
      throw config_error("config: grid.cells entries must be powers of two >= 4");
  if (!(c.alpha >= 0) || c.alpha >= static_cast<double>(c.m) * c.grid.dim)
    throw config_error("config: alpha must satisfy 0 <= alpha < m*n");
  if (static_cast<int>(c.u.size()) != c.m)
    throw config_error("config: weights.u must have one family per slot (m)");
  if (static_cast<int>(c.functions.size()) != c.m)
    throw config_error("config: functions must have one spec per slot (m)");
  for (double p : c.p_ladder)
    if (!(p > 1)) throw config_error("config: p_ladder entries must be > 1");
  return c;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_hash(const RunConfig& config) {
  const std::string text = serialize_config(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

TheoremInstance instance_from_config(const RunConfig& config, TheoremId id) {
  TheoremInstance inst;
  inst.theorem = id;
  inst.m = config.m;
  inst.dim = config.grid.dim;
  inst.alpha = config.alpha;
  inst.half_width = config.grid.half_width;
  inst.family = config.family;
  inst.mode = config.mode;
  inst.functions = config.functions;
  inst.function_families = config.function_families;
  inst.u = config.u;
  inst.v = config.v;
  inst.moen_w = config.moen_w;
  inst.moen_s = config.moen_s.empty() ? 1.0 : config.moen_s.front();
  inst.r = config.vector_r;
  inst.override_guards = config.override_guards;
  if (id == TheoremId::Sawyer11) inst.alpha = 0.0;
  if (id == TheoremId::VectorValued42 && inst.function_families.empty()) {
    // default: each slot's single function as a one-member family
    for (const auto& f : inst.functions)
      inst.function_families.push_back({f});
  }
  return inst;
}

SearchSpace space_from_config(const RunConfig& config, bool for_search) {
  SearchSpace space;
  space.base = instance_from_config(
      config, for_search ? config.search.theorem : config.sweep.theorem);
  space.params = for_search ? config.search.params : config.sweep.params;
  space.grid_sizes = config.grid.cells;
  space.protocol = config.stability;
  space.p_ladder = config.p_ladder;
  space.budget = for_search ? config.search.budget : config.sweep.budget;
  return space;
}

} // namespace weaklab
