// plan: run, benchmark and convergence front end for the planning library.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aorrt/aorrt.hpp"

namespace {

using nlohmann::json;

struct OverrideFlags {
  std::optional<double> w_x, w_c, c_max, t_prop, goal_bias, resolution;

  void add(CLI::App* app) {
    app->add_option("--w-x", w_x, "State weight of the metric");
    app->add_option("--w-c", w_c, "Cost weight of the metric");
    app->add_option("--c-max", c_max, "Initial cost sampling bound");
    app->add_option("--t-prop", t_prop, "Maximum propagation duration");
    app->add_option("--goal-bias", goal_bias, "Probability of sampling inside the goal");
    app->add_option("--resolution", resolution, "Collision check spacing in seconds");
  }

  aorrt::ParamOverrides get() const {
    aorrt::ParamOverrides o;
    o.w_x = w_x;
    o.w_c = w_c;
    o.c_max = c_max;
    o.t_prop = t_prop;
    o.goal_bias = goal_bias;
    o.resolution = resolution;
    return o;
  }
};

json solution_json(const aorrt::Solution& s) {
  json j;
  j["cost"] = s.cost;
  j["schedule"] = json::array();
  for (const auto& seg : s.schedule) {
    j["schedule"].push_back({{"u", std::vector<double>(seg.u.begin(), seg.u.end())}, {"duration", seg.duration}});
  }
  j["trajectory"] = json::array();
  for (const auto& smp : s.trajectory.samples) {
    json row = json::array();
    row.push_back(smp.time);
    for (double v : smp.state) row.push_back(v);
    j["trajectory"].push_back(row);
  }
  return j;
}

int cmd_run(const std::string& scenario, const std::string& planner, std::uint64_t seed,
            std::optional<std::uint64_t> iterations, std::optional<double> budget, const OverrideFlags& flags,
            const std::string& out, bool verify) {
  const aorrt::Scenario sc = aorrt::load_scenario(scenario);
  const aorrt::PlannerVariant pv = aorrt::parse_variant(planner);
  aorrt::PlannerParams p = sc.default_params();
  flags.get().apply(p);
  p.iterations = iterations;
  p.time_budget = budget;
  const aorrt::PlanResult r = aorrt::plan(sc, p, aorrt::PlannerStreams::for_trial(seed, 0), pv, aorrt::RunOptions{verify});

  json j;
  j["scenario"] = sc.name;
  j["planner"] = std::string(aorrt::variant_name(pv));
  j["seed"] = seed;
  j["iterations"] = r.iterations;
  j["seconds"] = r.seconds;
  j["nodes"] = r.nodes;
  j["pruned"] = r.pruned;
  j["diverged"] = r.diverged;
  j["success"] = r.best.has_value();
  if (r.first_cost) j["first_cost"] = *r.first_cost;
  j["cost_log"] = json::array();
  for (const auto& e : r.cost_log) j["cost_log"].push_back({{"iteration", e.iteration}, {"seconds", e.seconds}, {"cost", e.cost}});
  if (r.best) j["solution"] = solution_json(*r.best);
  if (r.tree_check) {
    j["tree_check_ok"] = r.tree_check->ok();
    if (!r.tree_check->ok()) j["tree_check_error"] = r.tree_check->first_error;
  }
  if (r.replay_ok) j["replay_ok"] = *r.replay_ok;
  aorrt::write_text_file(out, j.dump(2) + "\n");

  std::cout << aorrt::variant_name(pv) << " on " << sc.name << ": ";
  if (r.best) {
    std::cout << "cost " << aorrt::fmt6(r.best->cost);
  } else {
    std::cout << "no solution";
  }
  std::cout << " after " << r.iterations << " iterations, " << r.nodes << " nodes\n";
  return 0;
}

int cmd_bench(const std::string& config, std::optional<std::size_t> threads, const std::string& out_override) {
  aorrt::BenchConfig cfg = aorrt::load_bench_config(config);
  if (threads) cfg.threads = *threads;
  if (!out_override.empty()) cfg.out = out_override;
  if (cfg.out.empty()) throw aorrt::ParameterError("no output prefix: set \"out\" in the config or pass --out");
  const aorrt::Scenario sc = aorrt::load_scenario(cfg.scenario);
  const aorrt::BenchOutput b = aorrt::run_benchmark(cfg, sc);
  aorrt::emit_csv(b, cfg.out);
  aorrt::write_text_file(cfg.out + ".meta.json", aorrt::bench_metadata(cfg, sc, b).dump(2) + "\n");

  std::size_t failed = 0;
  for (const auto& t : b.trials) {
    if (t.failed) {
      ++failed;
      std::cerr << "trial " << t.trial << " (" << aorrt::variant_name(t.planner) << ") failed: " << t.diagnostic << "\n";
    }
  }
  for (const auto& row : b.summary) {
    if (row.checkpoint != b.summary.back().checkpoint) continue;
    std::cout << aorrt::variant_name(row.planner) << ": success " << aorrt::fmt6(row.success_rate) << ", mean cost "
              << (row.mean_cost ? aorrt::fmt6(*row.mean_cost) : std::string("-")) << "\n";
  }
  if (failed) std::cerr << failed << " trial(s) failed\n";
  return 0;
}

int cmd_converge(const std::string& scenario, const std::string& planner, const std::vector<double>& eps,
                 const std::vector<std::uint64_t>& k_grid, std::size_t trials, std::uint64_t seed, std::size_t threads,
                 const OverrideFlags& flags, const std::string& out) {
  const aorrt::Scenario sc = aorrt::load_scenario(scenario);
  aorrt::ConvergenceConfig cfg;
  cfg.planner = aorrt::parse_variant(planner);
  cfg.epsilons = eps;
  cfg.k_grid = k_grid;
  cfg.trials = trials;
  cfg.base_seed = seed;
  cfg.threads = threads;
  cfg.overrides = flags.get();
  const aorrt::ConvergenceOutput c = aorrt::convergence_experiment(sc, cfg);
  aorrt::write_text_file(out, aorrt::convergence_csv(c));
  std::cout << "oracle " << aorrt::fmt6(c.oracle) << "\n" << aorrt::convergence_csv(c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AO-RRT kinodynamic planner"};
  app.require_subcommand(1);

  std::string scenario, planner = "ao-rrt", out;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> iterations;
  std::optional<double> budget;
  bool no_verify = false;
  OverrideFlags run_flags;
  auto* run = app.add_subcommand("run", "Plan once and write the result as JSON");
  run->add_option("--scenario", scenario, "Built-in scenario name or JSON path")->required();
  run->add_option("--planner", planner, "rrt, ao-rrt, ao-rrt-prune, multi-tree, hybrid or sst");
  run->add_option("--seed", seed, "Master seed");
  auto* it_opt = run->add_option("--iterations", iterations, "Iteration cap");
  run->add_option("--time-budget", budget, "Wall-clock budget in seconds")->excludes(it_opt);
  run->add_option("--out", out, "Result JSON path")->required();
  run->add_flag("--no-verify", no_verify, "Skip tree recomputation and replay");
  run_flags.add(run);

  std::string config, bench_out;
  std::optional<std::size_t> bench_threads;
  auto* bench = app.add_subcommand("bench", "Run a benchmark config and write CSV");
  bench->add_option("--config", config, "Benchmark config JSON")->required();
  bench->add_option("--threads", bench_threads, "Trial-level worker threads");
  bench->add_option("--out", bench_out, "Output prefix (overrides the config)");

  std::string conv_scenario, conv_planner = "ao-rrt", conv_out;
  std::vector<double> eps;
  std::vector<std::uint64_t> k_grid;
  std::size_t trials = 30, conv_threads = 1;
  std::uint64_t conv_seed = 1;
  OverrideFlags conv_flags;
  auto* conv = app.add_subcommand("converge", "Empirical failure rate against a cost oracle");
  conv->add_option("--scenario", conv_scenario, "Oracle-tagged scenario")->required();
  conv->add_option("--planner", conv_planner, "Planner variant");
  conv->add_option("--eps", eps, "Relative tolerances")->required()->delimiter(',');
  conv->add_option("--k-grid", k_grid, "Iteration counts")->required()->delimiter(',');
  conv->add_option("--trials", trials, "Trials per k");
  conv->add_option("--seed", conv_seed, "Base seed");
  conv->add_option("--threads", conv_threads, "Worker threads");
  conv->add_option("--out", conv_out, "CSV path")->required();
  conv_flags.add(conv);

  std::string exp_scenario, exp_out;
  auto* exp = app.add_subcommand("export", "Write a scenario as JSON");
  exp->add_option("--scenario", exp_scenario, "Built-in scenario name or JSON path")->required();
  exp->add_option("--out", exp_out, "JSON path")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) {
      if (!iterations && !budget) throw aorrt::ParameterError("pass --iterations or --time-budget");
      return cmd_run(scenario, planner, seed, iterations, budget, run_flags, out, !no_verify);
    }
    if (*bench) return cmd_bench(config, bench_threads, bench_out);
    if (*conv) return cmd_converge(conv_scenario, conv_planner, eps, k_grid, trials, conv_seed, conv_threads, conv_flags,
                                   conv_out);
    if (*exp) {
      aorrt::write_text_file(exp_out, aorrt::scenario_to_json(aorrt::load_scenario(exp_scenario)).dump(2) + "\n");
      return 0;
    }
  } catch (const aorrt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
