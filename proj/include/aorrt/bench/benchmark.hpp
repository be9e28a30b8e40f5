#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "aorrt/bench/csv.hpp"
#include "aorrt/planners/plan.hpp"
#include "aorrt/scenarios/oracles.hpp"
#include "aorrt/scenarios/scenario_json.hpp"

namespace aorrt {

/// Per-run parameter overrides on top of the scenario defaults.
struct ParamOverrides {
  std::optional<double> w_x;
  std::optional<double> w_c;
  std::optional<double> c_max;
  std::optional<double> t_prop;
  std::optional<double> goal_bias;
  std::optional<double> resolution;
  std::optional<bool> adaptive_cmax;

  void apply(PlannerParams& p) const {
    if (w_x) p.weights.w_x = *w_x;
    if (w_c) p.weights.w_c = *w_c;
    if (c_max) p.c_max = *c_max;
    if (t_prop) p.t_prop = *t_prop;
    if (goal_bias) p.goal_bias = *goal_bias;
    if (resolution) p.collision_resolution = *resolution;
    if (adaptive_cmax) p.adaptive_cmax = *adaptive_cmax;
  }
};

struct BenchConfig {
  std::string scenario;
  std::vector<PlannerVariant> planners;
  std::size_t trials = 50;
  std::optional<std::uint64_t> iterations;
  std::optional<double> time_budget;
  /// Curve sample points: iterations (iteration mode) or seconds (time mode).
  /// Empty means a single sample at the stop condition.
  std::vector<double> checkpoints;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;
  std::string out;
  ParamOverrides overrides;
  /// Full-tree recomputation and schedule replay after every trial.
  bool verify = true;

  bool time_mode() const { return time_budget.has_value() && !iterations.has_value(); }

  std::vector<double> effective_checkpoints() const {
    if (!checkpoints.empty()) return checkpoints;
    return {time_mode() ? *time_budget : static_cast<double>(iterations.value_or(0))};
  }

  void validate() const {
    if (trials == 0) throw ParameterError("trials must be at least 1");
    if (planners.empty()) throw ParameterError("at least one planner is required");
    if (!iterations && !time_budget) throw ParameterError("either iterations or time_budget is required");
    if (threads == 0) throw ParameterError("threads must be at least 1");
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
      if (!(checkpoints[i] > checkpoints[i - 1])) throw ParameterError("checkpoints must be strictly increasing");
    }
  }
};

/// One (planner, trial, checkpoint) sample.
struct BenchRecord {
  PlannerVariant planner;
  std::size_t trial = 0;
  double checkpoint = 0.0;
  bool success = false;
  std::optional<double> best_cost;
  std::size_t nodes = 0;
  std::size_t pruned = 0;
};

struct SummaryRow {
  PlannerVariant planner;
  double checkpoint = 0.0;
  double success_rate = 0.0;
  std::optional<double> mean_cost;
  std::optional<double> std_cost;
  std::size_t n_success = 0;
};

/// Outcome of one trial, kept for acceptance checks.
struct TrialOutcome {
  PlannerVariant planner;
  std::size_t trial = 0;
  bool failed = false;
  std::string diagnostic;
  std::optional<double> best_cost;
  std::optional<double> first_cost;
  std::uint64_t iterations = 0;
  double seconds = 0.0;
  std::optional<TreeCheck> tree_check;
  std::optional<bool> replay_ok;
  std::vector<CostLogEntry> cost_log;
};

struct BenchOutput {
  std::vector<BenchRecord> records;
  std::vector<SummaryRow> summary;
  std::vector<TrialOutcome> trials;
  PlannerParams params;
  bool iteration_checkpoints = true;
};

/// Runs `jobs` indices on `threads` workers; `fn(i)` must only touch slot i.
inline void parallel_for(std::size_t jobs, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, jobs));
  if (threads == 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline PlannerParams bench_params(const Scenario& sc, const BenchConfig& cfg) {
  PlannerParams p = sc.default_params();
  cfg.overrides.apply(p);
  p.iterations = cfg.iterations;
  p.time_budget = cfg.time_budget;
  p.checkpoints = cfg.effective_checkpoints();
  return p;
}

/// Mean and sample standard deviation (n - 1) over the successful trials.
inline std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records, const std::vector<PlannerVariant>& planners,
                                         const std::vector<double>& checkpoints, std::size_t trials) {
  std::vector<SummaryRow> out;
  for (PlannerVariant pv : planners) {
    for (double cp : checkpoints) {
      SummaryRow row{pv, cp, 0.0, std::nullopt, std::nullopt, 0};
      double sum = 0.0;
      std::vector<double> costs;
      for (const auto& r : records) {
        if (r.planner != pv || r.checkpoint != cp || !r.success) continue;
        costs.push_back(*r.best_cost);
        sum += *r.best_cost;
      }
      row.n_success = costs.size();
      row.success_rate = static_cast<double>(costs.size()) / static_cast<double>(trials);
      if (!costs.empty()) {
        const double mean = sum / static_cast<double>(costs.size());
        double ss = 0.0;
        for (double c : costs) ss += (c - mean) * (c - mean);
        row.mean_cost = mean;
        row.std_cost = costs.size() > 1 ? std::sqrt(ss / static_cast<double>(costs.size() - 1)) : 0.0;
      }
      out.push_back(row);
    }
  }
  return out;
}

inline BenchOutput run_benchmark(const BenchConfig& cfg, const Scenario& sc) {
  cfg.validate();
  sc.validate();
  BenchOutput out;
  out.params = bench_params(sc, cfg);
  out.params.validate();
  out.iteration_checkpoints = !cfg.time_mode();
  const std::vector<double> cps = out.params.checkpoints;
  const std::size_t jobs = cfg.planners.size() * cfg.trials;

  std::vector<TrialOutcome> outcomes(jobs);
  std::vector<std::vector<BenchRecord>> rows(jobs);
  parallel_for(jobs, cfg.threads, [&](std::size_t job) {
    const PlannerVariant pv = cfg.planners[job / cfg.trials];
    const std::size_t trial = job % cfg.trials;
    TrialOutcome& o = outcomes[job];
    o.planner = pv;
    o.trial = trial;
    try {
      const PlanResult res = plan(sc, out.params, PlannerStreams::for_trial(cfg.base_seed, trial), pv,
                                  RunOptions{cfg.verify});
      if (res.best) o.best_cost = res.best->cost;
      o.first_cost = res.first_cost;
      o.iterations = res.iterations;
      o.seconds = res.seconds;
      o.tree_check = res.tree_check;
      o.replay_ok = res.replay_ok;
      o.cost_log = res.cost_log;
      for (const auto& c : res.checkpoints) {
        rows[job].push_back(BenchRecord{pv, trial, c.checkpoint, c.best_cost.has_value(), c.best_cost, c.nodes, c.pruned});
      }
    } catch (const std::exception& e) {
      o.failed = true;
      o.diagnostic = e.what();
      rows[job].clear();
      for (double cp : cps) rows[job].push_back(BenchRecord{pv, trial, cp, false, std::nullopt, 0, 0});
    }
  });

  for (auto& r : rows) out.records.insert(out.records.end(), r.begin(), r.end());
  out.trials = std::move(outcomes);
  out.summary = summarize(out.records, cfg.planners, cps, cfg.trials);
  return out;
}

inline std::string format_checkpoint(double cp, bool integer) {
  if (integer && cp >= 0.0 && cp == std::floor(cp) && cp < 1e18) return std::to_string(static_cast<std::uint64_t>(cp));
  return fmt6(cp);
}

inline std::string raw_csv(const BenchOutput& b) {
  std::string s = "planner,trial,checkpoint,success,best_cost,nodes,pruned\n";
  for (const auto& r : b.records) {
    s += std::string(variant_name(r.planner)) + "," + std::to_string(r.trial) + "," +
         format_checkpoint(r.checkpoint, b.iteration_checkpoints) + "," + (r.success ? "1" : "0") + "," +
         fmt6(r.best_cost) + "," + std::to_string(r.nodes) + "," + std::to_string(r.pruned) + "\n";
  }
  return s;
}

inline std::string summary_csv(const BenchOutput& b) {
  std::string s = "planner,checkpoint,success_rate,mean_cost,std_cost,n_success\n";
  for (const auto& r : b.summary) {
    s += std::string(variant_name(r.planner)) + "," + format_checkpoint(r.checkpoint, b.iteration_checkpoints) + "," +
         fmt6(r.success_rate) + "," + fmt6(r.mean_cost) + "," + fmt6(r.std_cost) + "," + std::to_string(r.n_success) +
         "\n";
  }
  return s;
}

/// Run settings that shape the numbers: weights, bounds, resolution, goal bias.
inline nlohmann::json bench_metadata(const BenchConfig& cfg, const Scenario& sc, const BenchOutput& b) {
  nlohmann::json j;
  j["scenario"] = sc.name;
  j["system"] = sc.system_name;
  j["planners"] = nlohmann::json::array();
  for (auto pv : cfg.planners) j["planners"].push_back(std::string(variant_name(pv)));
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  if (cfg.iterations) j["iterations"] = *cfg.iterations;
  if (cfg.time_budget) j["time_budget"] = *cfg.time_budget;
  const PlannerParams& p = b.params;
  const IntegratorConfig ic = integrator_for(p);
  j["t_prop"] = p.t_prop;
  j["c_max"] = p.c_max;
  j["w_x"] = p.weights.w_x;
  j["w_c"] = p.weights.w_c;
  j["goal_bias"] = p.goal_bias;
  j["adaptive_cmax"] = p.adaptive_cmax;
  j["integrator_step"] = ic.step;
  j["collision_resolution"] = effective_resolution(p, ic);
  if (sc.system_name == KinematicCar::kName) {
    j["vehicle_model"] = "3-state kinematic car (desk-scale stand-in for a full vehicle model)";
  }
  return j;
}

/// Writes `<prefix>.raw.csv` and `<prefix>.summary.csv`.
inline void emit_csv(const BenchOutput& b, const std::string& prefix) {
  write_text_file(prefix + ".raw.csv", raw_csv(b));
  write_text_file(prefix + ".summary.csv", summary_csv(b));
}

inline BenchConfig bench_config_from_json(const nlohmann::json& j) {
  using detail::member;
  BenchConfig c;
  const auto& sc = member(j, "scenario", "");
  if (!sc.is_string()) throw ValidationError("scenario: expected a name or path");
  c.scenario = sc.get<std::string>();
  const auto& pl = member(j, "planners", "");
  if (!pl.is_array()) throw ValidationError("planners: expected an array of names");
  for (const auto& p : pl) {
    if (!p.is_string()) throw ValidationError("planners: expected planner names");
    c.planners.push_back(parse_variant(p.get<std::string>()));
  }
  auto count = [&](const char* key) -> std::optional<std::uint64_t> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number_unsigned()) throw ValidationError(std::string(key) + ": expected a non-negative integer");
    return j[key].get<std::uint64_t>();
  };
  auto real = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key)) return std::nullopt;
    return detail::number(j[key], key);
  };
  if (auto t = count("trials")) c.trials = *t;
  c.iterations = count("iterations");
  c.time_budget = real("time_budget");
  if (j.contains("checkpoints")) c.checkpoints = detail::numbers(j["checkpoints"], "checkpoints");
  if (auto s = count("seed")) c.base_seed = *s;
  if (auto t = count("threads")) c.threads = *t;
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ValidationError("out: expected a path prefix");
    c.out = j["out"].get<std::string>();
  }
  if (j.contains("verify")) {
    if (!j["verify"].is_boolean()) throw ValidationError("verify: expected a boolean");
    c.verify = j["verify"].get<bool>();
  }
  c.overrides.w_x = real("w_x");
  c.overrides.w_c = real("w_c");
  c.overrides.c_max = real("c_max");
  c.overrides.t_prop = real("t_prop");
  c.overrides.goal_bias = real("goal_bias");
  c.overrides.resolution = real("resolution");
  if (j.contains("adaptive_cmax")) {
    if (!j["adaptive_cmax"].is_boolean()) throw ValidationError("adaptive_cmax: expected a boolean");
    c.overrides.adaptive_cmax = j["adaptive_cmax"].get<bool>();
  }
  c.validate();
  return c;
}

inline BenchConfig load_bench_config(const std::string& path) {
  const std::string text = read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ":" + std::to_string(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + e.what());
  }
  return bench_config_from_json(j);
}

}  // namespace aorrt
