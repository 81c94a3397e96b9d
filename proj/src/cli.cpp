#include "weaklab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "weaklab/report_io.hpp"
#include "weaklab/rng.hpp"

namespace weaklab {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Per-slot class constants across the grid ladder.
json weight_class_report(const RunConfig& config, const WeightFamily& family,
                         const std::string& label) {
  json out;
  out["slot"] = label;
  auto refine = [&](auto eval) {
    return refine_constant(eval, config.grid.dim, config.grid.half_width,
                           config.grid.cells, config.stability);
  };
  out["a1"] = to_json(refine([&](const Grid& g) {
    return a1_constant(sample(family, g), config.family);
  }));
  json aps = json::array();
  for (double p : config.p_ladder)
    aps.push_back(to_json(refine([&](const Grid& g) {
      return ap_constant(sample(family, g), p, config.family);
    })));
  out["ap"] = aps;
  out["ainf_proxy"] = to_json(refine([&](const Grid& g) {
    return ainf_proxy(sample(family, g), config.family, config.p_ladder);
  }));
  out["locally_integrable"] = family.locally_integrable(config.grid.dim);
  out["a1_eligible"] = family.a1_eligible(config.grid.dim);
  return out;
}

SampledFunction random_function(const Grid& grid, SplitMix& rng) {
  std::vector<double> values(grid.cell_count());
  for (double& v : values) {
    v = rng.next_unit();
    if (v < 0.25) v = 0.0; // keep some genuine zeros in play
  }
  return make_sampled(grid, std::move(values));
}

Weight random_weight(const Grid& grid, SplitMix& rng) {
  std::vector<double> values(grid.cell_count());
  for (double& v : values) v = 0.1 + rng.next_unit();
  return make_weight({grid, std::move(values)});
}

} // namespace

int cmd_constants(const RunConfig& config, const fs::path& out_dir) {
  ensure_dir(out_dir);
  json j = report_envelope(config);

  json slots = json::array();
  for (std::size_t i = 0; i < config.u.size(); ++i)
    slots.push_back(weight_class_report(config, config.u[i],
                                        "u" + std::to_string(i + 1)));
  slots.push_back(weight_class_report(config, config.v, "v"));
  j["weights"] = slots;

  // Multilinear constant of the u tuple at P = (1,...,1).
  j["multilinear_a11"] = to_json(refine_constant(
      [&](const Grid& g) {
        std::vector<Weight> ws;
        for (const auto& u : config.u) ws.push_back(sample(u, g));
        std::vector<double> ones(ws.size(), 1.0);
        return multilinear_ap_constant(ws, ones, config.family);
      },
      config.grid.dim, config.grid.half_width, config.grid.cells,
      config.stability));

  RefinedReport t23 =
      run_refinement(instance_from_config(config, TheoremId::Thm23Char),
                     config.grid.cells, config.stability, config.p_ladder);
  j["theorem23"] = to_json(t23);

  write_text_file(out_dir / "muckenhoupt_report.json", dump(j));
  return t23.status == ReportStatus::Violation ? kExitViolation : kExitOk;
}

int cmd_verify(const RunConfig& config, const fs::path& out_dir) {
  ensure_dir(out_dir);
  bool violation = false;
  std::ostringstream summary;
  summary << "theorem,N,empirical_constant,status\n";

  for (TheoremId id : config.theorems) {
    json body = report_envelope(config);
    if (id == TheoremId::MoenA1) {
      json by_s = json::array();
      for (double s : config.moen_s) {
        TheoremInstance inst = instance_from_config(config, id);
        inst.moen_s = s;
        RefinedReport rep = run_refinement(inst, config.grid.cells,
                                           config.stability, config.p_ladder);
        if (rep.status == ReportStatus::Violation) violation = true;
        for (std::size_t k = 0; k < rep.per_grid.size(); ++k)
          summary << to_string(id) << "," << rep.grid_sizes[k] << ","
                  << csv_number(rep.constants[k]) << ","
                  << to_string(rep.per_grid[k].status) << "\n";
        json one = to_json(rep);
        one["s"] = s;
        by_s.push_back(std::move(one));
      }
      body["by_s"] = by_s;
    } else {
      TheoremInstance inst = instance_from_config(config, id);
      RefinedReport rep = run_refinement(inst, config.grid.cells,
                                         config.stability, config.p_ladder);
      if (rep.status == ReportStatus::Violation) violation = true;
      for (std::size_t k = 0; k < rep.per_grid.size(); ++k)
        summary << to_string(id) << "," << rep.grid_sizes[k] << ","
                << csv_number(rep.constants[k]) << ","
                << to_string(rep.per_grid[k].status) << "\n";
      body["report"] = to_json(rep);

      // The proof-route containment rides along with the maximal theorem.
      if (id == TheoremId::ThmMax) {
        const Grid grid = build_grid(config.grid.dim, config.grid.half_width,
                                     config.grid.cells.back());
        std::vector<SampledFunction> fsv;
        for (const auto& f : config.functions) fsv.push_back(f.sample(grid));
        std::vector<Weight> us;
        for (const auto& u : config.u) us.push_back(sample(u, grid));
        ProofChainResult chain = proof_chain_check(
            fsv, us, sample(config.v, grid), config.alpha, config.family);
        if (chain.status == ReportStatus::Violation) violation = true;
        body["proof_chain"] = {
            {"max_discrepancy", chain.max_discrepancy},
            {"status", to_string(chain.status)}};
      }
    }
    write_text_file(out_dir / ("report_" + to_string(id) + ".json"),
                    dump(body));
  }
  write_text_file(out_dir / "summary.csv", summary.str());
  return violation ? kExitViolation : kExitOk;
}

namespace {

std::string records_csv(const std::vector<ParamDef>& params,
                        const std::vector<EvalRecord>& rows, bool with_step) {
  std::ostringstream csv;
  if (with_step) csv << "step,";
  for (const auto& p : params) csv << "param:" << p.name << ",";
  csv << "objective,hypothesis_stable,constant_verdict,status\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (with_step) csv << i << ",";
    for (double v : rows[i].params) csv << csv_number(v) << ",";
    csv << csv_number(rows[i].objective) << ","
        << (rows[i].hypothesis_stable ? "true" : "false") << ","
        << to_string(rows[i].constant_verdict) << ","
        << to_string(rows[i].status) << "\n";
  }
  return csv.str();
}

json best_json(const RunConfig& config, const SearchSpace& space,
               std::span<const double> best, double objective) {
  json j = report_envelope(config);
  json params;
  for (std::size_t k = 0; k < space.params.size(); ++k)
    params[space.params[k].name] = best[k];
  j["params"] = params;
  j["objective"] = objective;
  j["theorem"] = to_string(space.base.theorem);
  return j;
}

// Two-column plot data: threshold vs t*mu{.>t}^{1/q} of the best instance.
std::string best_sweep_csv(const SearchSpace& space,
                           std::span<const double> best) {
  InequalityReport rep = evaluate_instance(space.instantiate(best),
                                           space.grid_sizes.back(),
                                           space.p_ladder);
  std::ostringstream csv;
  csv << "threshold,weak_value\n";
  for (const auto& [t, v] : rep.sweep)
    csv << csv_number(t) << "," << csv_number(v) << "\n";
  return csv.str();
}

} // namespace

int cmd_sweep(const RunConfig& config, const fs::path& out_dir) {
  ensure_dir(out_dir);
  SearchSpace space = space_from_config(config, /*for_search=*/false);
  std::vector<EvalRecord> rows = sweep(space, config.sweep.steps_per_axis);
  write_text_file(out_dir / "sweep.csv",
                  records_csv(space.params, rows, /*with_step=*/false));

  const EvalRecord* best = nullptr;
  for (const auto& r : rows)
    if (r.hypothesis_stable && (!best || r.objective > best->objective))
      best = &r;
  if (!best && !rows.empty()) best = &rows.front();
  if (best) {
    write_text_file(out_dir / "best.json",
                    dump(best_json(config, space, best->params,
                                   best->objective)));
    write_text_file(out_dir / "best_sweep.csv",
                    best_sweep_csv(space, best->params));
  }
  return kExitOk;
}

int cmd_search(const RunConfig& config, const fs::path& out_dir) {
  ensure_dir(out_dir);
  SearchSpace space = space_from_config(config, /*for_search=*/true);
  std::vector<double> initial = config.search.initial;
  if (initial.empty())
    for (const auto& p : space.params) initial.push_back(0.5 * (p.lo + p.hi));
  SearchState state = hill_climb(space, initial, config.search.max_steps,
                                 config.search.step_scale, config.seed);
  write_text_file(out_dir / "search_history.csv",
                  records_csv(space.params, state.history, /*with_step=*/true));
  write_text_file(out_dir / "best.json",
                  dump(best_json(config, space, state.best_params,
                                 state.best_objective)));
  write_text_file(out_dir / "best_sweep.csv",
                  best_sweep_csv(space, state.best_params));
  return kExitOk;
}

int cmd_oracle_check(const RunConfig& config, const fs::path& out_dir) {
  ensure_dir(out_dir);
  SplitMix rng{config.seed ^ 0x5eedf00dULL};
  double worst_sum = 0.0, worst_min = 0.0, worst_max = 0.0, worst_weak = 0.0;

  for (int n : config.grid.cells) {
    const Grid grid = build_grid(config.grid.dim, config.grid.half_width, n);
    if (config.family == CubeFamilyKind::AllCubes &&
        (grid.dim != 1 || n > 256))
      throw guard_error("oracle-check: AllCubes oracle guard is n=1, N<=256");
    if (config.family == CubeFamilyKind::ShiftedDyadic && grid.dim == 2 &&
        n > 32)
      throw guard_error("oracle-check: ShiftedDyadic oracle guard is N<=32");

    // Prefix sums and minima against the naive scan.
    SampledFunction values = random_function(grid, rng);
    PrefixTable table(grid, values.values);
    if (config.corrupt_prefix_for_test)
      table.debug_perturb_prefix(grid.cell_count() / 2, 1e-3);
    for (const Cube& q : enumerate_cubes(grid, config.family)) {
      double naive_sum = 0.0;
      double naive_min = std::numeric_limits<double>::infinity();
      for (int j = 0; j < (grid.dim == 1 ? 1 : q.side_cells); ++j)
        for (int i = q.origin[0]; i < q.origin[0] + q.side_cells; ++i) {
          double v = values.values[grid.dim == 1
                                       ? i
                                       : grid.cell_index(i, q.origin[1] + j)];
          naive_sum += v;
          naive_min = std::min(naive_min, v);
        }
      double fast = table.cube_sum(q);
      double scale = std::max({std::abs(naive_sum), std::abs(fast), 1e-300});
      worst_sum = std::max(worst_sum, std::abs(fast - naive_sum) / scale);
      worst_min =
          std::max(worst_min, std::abs(table.cube_min(q) - naive_min));
    }

    // Maximal operator fast path against the direct-summation oracle.
    std::vector<SampledFunction> fsv;
    for (int i = 0; i < config.m; ++i) fsv.push_back(random_function(grid, rng));
    OperatorSpec spec{config.m, config.alpha, config.family};
    SampledFunction fast = maximal(fsv, spec);
    SampledFunction oracle = maximal_oracle(fsv, spec);
    for (std::int64_t c = 0; c < grid.cell_count(); ++c) {
      double scale = std::max(
          {std::abs(fast.values[c]), std::abs(oracle.values[c]), 1e-300});
      worst_max = std::max(
          worst_max, std::abs(fast.values[c] - oracle.values[c]) / scale);
    }

    // Weak quasi-norm against a threshold scan from just below each level.
    SampledFunction f = random_function(grid, rng);
    Weight density = random_weight(grid, rng);
    WeightedMeasure mu = make_measure(grid, density.values());
    for (double q : {0.5, 1.0, 2.0}) {
      double exact = weak_norm(f, mu, q).value;
      double scanned = 0.0;
      for (double v : f.values)
        if (v > 0) {
          double t = v * (1.0 - 1e-12);
          scanned = std::max(
              scanned, t * std::pow(distribution(f, mu, t), 1.0 / q));
        }
      double scale = std::max({exact, scanned, 1e-300});
      worst_weak = std::max(worst_weak, std::abs(exact - scanned) / scale);
    }
  }

  const bool breach = worst_sum > 1e-12 || worst_min > 0.0 ||
                      worst_max > 1e-10 || worst_weak > 1e-9;
  std::cout << "oracle-check: cube_sum max rel discrepancy " << worst_sum
            << "\noracle-check: cube_min max abs discrepancy " << worst_min
            << "\noracle-check: maximal max rel discrepancy " << worst_max
            << "\noracle-check: weak_norm max rel discrepancy " << worst_weak
            << "\noracle-check: " << (breach ? "FAIL" : "OK") << std::endl;

  json j = report_envelope(config);
  j["cube_sum_rel"] = worst_sum;
  j["cube_min_abs"] = worst_min;
  j["maximal_rel"] = worst_max;
  j["weak_norm_rel"] = worst_weak;
  j["ok"] = !breach;
  write_text_file(out_dir / "oracle_check.json", dump(j));
  return breach ? kExitViolation : kExitOk;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"weaklab: weighted weak-type inequality laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool override_guards = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")
        ->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed override")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_flag("--override-guards", override_guards,
                  "lift operator work guards");
  };

  CLI::App* constants = app.add_subcommand("constants", "weight-class constants");
  CLI::App* verify = app.add_subcommand("verify", "theorem instances");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  CLI::App* search_cmd = app.add_subcommand("search", "hill-climb search");
  CLI::App* oracle =
      app.add_subcommand("oracle-check", "fast-vs-oracle equivalence");
  for (CLI::App* sub : {constants, verify, sweep_cmd, search_cmd, oracle})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config = load_config_file(config_path);
    if (seed_set) config.seed = seed;
    if (override_guards) config.override_guards = true;
    if (constants->parsed()) return cmd_constants(config, out_dir);
    if (verify->parsed()) return cmd_verify(config, out_dir);
    if (sweep_cmd->parsed()) return cmd_sweep(config, out_dir);
    if (search_cmd->parsed()) return cmd_search(config, out_dir);
    if (oracle->parsed()) return cmd_oracle_check(config, out_dir);
    return kExitConfig;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const guard_error& e) {
    std::cerr << "guard refusal: " << e.what() << std::endl;
    return kExitGuard;
  } catch (const budget_error& e) {
    std::cerr << "budget refusal: " << e.what() << std::endl;
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  }
}

} // namespace weaklab
