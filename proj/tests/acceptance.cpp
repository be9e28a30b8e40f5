// Acceptance suite: prints one PASS/FAIL line per criterion.
//
//   acceptance [--plan PATH] [N ...]
//
// With numbers, only those criteria run. --plan points at the CLI binary used
// by the determinism check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aorrt/aorrt.hpp"

using namespace aorrt;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string plan_binary;

/// Outcomes of every benchmark run in this process, for the bookkeeping check.
std::vector<TrialOutcome> all_outcomes;

std::string fmt(double v) { return fmt6(v); }

double mean_of(const std::vector<double>& v) {
  return v.empty() ? std::nan("") : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> final_costs(const BenchOutput& b, PlannerVariant pv) {
  std::vector<double> out;
  for (const auto& t : b.trials) {
    if (t.planner == pv && t.best_cost) out.push_back(*t.best_cost);
  }
  return out;
}

BenchOutput bench(const Scenario& sc, std::vector<PlannerVariant> planners, std::size_t trials,
                  std::optional<std::uint64_t> iterations, std::optional<double> budget, ParamOverrides ov = {}) {
  BenchConfig cfg;
  cfg.scenario = sc.name;
  cfg.planners = std::move(planners);
  cfg.trials = trials;
  cfg.iterations = iterations;
  cfg.time_budget = budget;
  cfg.base_seed = 1;
  cfg.overrides = ov;
  cfg.verify = true;
  BenchOutput b = run_benchmark(cfg, sc);
  all_outcomes.insert(all_outcomes.end(), b.trials.begin(), b.trials.end());
  return b;
}

// 1. Failure rate against the bang-bang oracle on di1d_rest_to_rest.
Verdict criterion1() {
  const Scenario sc = find_builtin("di1d_rest_to_rest");
  ConvergenceConfig cfg;
  cfg.planner = PlannerVariant::ao_rrt;
  cfg.epsilons = {0.3};
  cfg.k_grid = {5000, 20000, 80000, 200000};
  cfg.trials = 30;
  const ConvergenceOutput c = convergence_experiment(sc, cfg);
  std::vector<double> rate;
  for (const auto& r : c.rows) rate.push_back(r.failure_rate);
  const bool monotone = rate[0] >= rate[1] && rate[1] >= rate[2];
  const double success = 1.0 - rate[3];
  std::ostringstream d;
  d << "oracle " << fmt(c.oracle) << "; failure rate at k=5e3,2e4,8e4: " << fmt(rate[0]) << "," << fmt(rate[1]) << ","
    << fmt(rate[2]) << (monotone ? " (non-increasing)" : " (INCREASES)") << "; success at k=2e5: " << fmt(success)
    << " (need >= 0.8)";
  return {monotone && success >= 0.8, d.str()};
}

// 2. Oracle gap and lower-bound soundness on geo2d_one_box, 15 s budget.
Verdict criterion2() {
  const Scenario sc = find_builtin("geo2d_one_box");
  const double oracle = scenario_oracle(sc);
  const double lower = scenario_lower_bound(sc);
  const BenchOutput b = bench(sc, {PlannerVariant::ao_rrt}, 50, std::nullopt, 15.0);
  const auto costs = final_costs(b, PlannerVariant::ao_rrt);
  const double m = mean_of(costs);
  const double lo = costs.empty() ? std::nan("") : *std::min_element(costs.begin(), costs.end());
  const double gap = (m - oracle) / oracle;
  const bool all_solved = costs.size() == 50;
  const bool sound = lo >= lower - 1e-6;
  std::ostringstream d;
  d << "oracle " << fmt(oracle) << ", mean " << fmt(m) << " over " << costs.size() << "/50 solved, gap "
    << fmt(100.0 * gap) << "% (need <= 15%); min " << fmt(lo) << " vs goal-region bound " << fmt(lower)
    << (lo >= oracle - 1e-6 ? " (also >= point oracle)" : " (below point oracle, above region bound)");
  return {all_solved && gap <= 0.15 && sound, d.str()};
}

// 3. AO-RRT variants beat RRT by >= 10% at equal time budget.
Verdict criterion3() {
  const double budget = 1.0;
  const std::vector<PlannerVariant> pv = {PlannerVariant::rrt, PlannerVariant::ao_rrt, PlannerVariant::ao_rrt_pruning,
                                          PlannerVariant::hybrid};
  bool pass = true;
  std::ostringstream d;
  d << "budget " << fmt(budget) << " s, 50 trials;";
  for (const char* name : {"geo2d_one_box", "car_parking_lite"}) {
    const BenchOutput b = bench(find_builtin(name), pv, 50, std::nullopt, budget);
    const double rrt = mean_of(final_costs(b, PlannerVariant::rrt));
    d << " " << name << ": rrt " << fmt(rrt);
    for (std::size_t i = 1; i < pv.size(); ++i) {
      const auto costs = final_costs(b, pv[i]);
      const double m = mean_of(costs);
      const bool ok = costs.size() == 50 && m <= 0.9 * rrt;
      pass = pass && ok;
      d << ", " << variant_name(pv[i]) << " " << fmt(m) << " (" << fmt(100.0 * (1.0 - m / rrt)) << "% below"
        << (ok ? "" : ", FAIL") << ")";
    }
    d << ";";
  }
  return {pass, d.str()};
}

template <DynamicalSystem S>
std::size_t equivalence_mismatches(const Scenario& sc, const S& sys, std::uint64_t iterations) {
  PlannerParams p = sc.default_params();
  p.iterations = iterations;
  p.adaptive_cmax = false;
  p.pruning = false;
  p.goal_bias = 0.0;
  p.weights = MetricWeights{1.0, 1.0};
  const Problem<S> prob{sys, sc.obstacles, sc.x_init, sc.goal};
  const PlannerStreams streams = PlannerStreams::for_trial(7, 0);

  AoRrtPlanner<S> ao(prob, p, streams);
  for (std::uint64_t it = 0; it < iterations; ++it) ao.step(it);

  const AugmentedSystem<S> aug(sys, p.c_max);
  State root(sys.state_dim() + 1);
  for (std::size_t i = 0; i < sys.state_dim(); ++i) root[i] = sc.x_init[i];
  GenericRrt<AugmentedSystem<S>> gen(aug, root, ao.integrator(), ao.resolution());
  PlannerStreams s = streams;
  const std::size_t d = sys.state_dim();
  const auto valid = [&](const State& y) {
    State x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = y[i];
    return sc.obstacles.is_free(x);
  };
  for (std::uint64_t it = 0; it < iterations; ++it) {
    const State yr = sample_augmented(s, sys.state_bounds(), p.c_max);
    const double t = s.duration.uniform(0.0, p.t_prop);
    const Control u = s.control.uniform_in(sys.control_bounds());
    gen.extend_towards(yr, u, t, valid);
  }

  const PlanTree& tree = ao.tree();
  const auto& nodes = gen.nodes();
  std::size_t mismatches = tree.capacity() > nodes.size() ? tree.capacity() - nodes.size() : nodes.size() - tree.capacity();
  for (std::size_t i = 0; i < std::min(tree.capacity(), nodes.size()); ++i) {
    const TreeNode& a = tree[static_cast<NodeId>(i)];
    const auto& b = nodes[i];
    bool same = a.parent == b.parent && bit_equal(a.y.c, b.x[d]);
    for (std::size_t k = 0; k < d; ++k) same = same && bit_equal(a.y.x[k], b.x[k]);
    mismatches += !same;
  }
  return mismatches;
}

// 4. AO-RRT tree equals a generic RRT run on F over Y.
Verdict criterion4() {
  std::size_t total = 0;
  std::ostringstream d;
  for (const char* name : {"geo2d_one_box", "di2d_two_boxes", "car_parking_lite"}) {
    const Scenario sc = find_builtin(name);
    const std::size_t m = std::visit([&](const auto& sys) { return equivalence_mismatches(sc, sys, 10000); }, sc.system);
    total += m;
    d << name << " " << m << " mismatches; ";
  }
  d << "10^4 iterations each";
  return {total == 0, d.str()};
}

// 5. Tree recomputation and schedule replay after every benchmark run.
Verdict criterion5() {
  for (const char* name : {"geo2d_one_box", "di1d_rest_to_rest", "di2d_two_boxes", "car_parking_lite"}) {
    bench(find_builtin(name),
          {PlannerVariant::rrt, PlannerVariant::ao_rrt, PlannerVariant::ao_rrt_pruning, PlannerVariant::multi_tree_ao,
           PlannerVariant::hybrid, PlannerVariant::sst},
          10, 20000, std::nullopt);
  }
  std::size_t trials = 0, failed = 0, bad_tree = 0, solved = 0, bad_replay = 0, nodes = 0;
  std::string first;
  for (const auto& t : all_outcomes) {
    ++trials;
    if (t.failed) {
      ++failed;
      if (first.empty()) first = t.diagnostic;
      continue;
    }
    if (!t.tree_check || !t.tree_check->ok()) {
      ++bad_tree;
      if (first.empty() && t.tree_check) first = t.tree_check->first_error;
    }
    if (t.tree_check) nodes += t.tree_check->nodes_checked;
    if (t.best_cost) {
      ++solved;
      bad_replay += !t.replay_ok.value_or(false);
    }
  }
  std::ostringstream d;
  d << trials << " trials, " << nodes << " nodes recomputed, " << bad_tree << " trees with drift, " << failed
    << " failed trials; replay ok in " << (solved - bad_replay) << "/" << solved << " solved trials";
  if (!first.empty()) d << "; first problem: " << first;
  return {failed == 0 && bad_tree == 0 && bad_replay == 0, d.str()};
}

// 6. Metric axioms, exact nearest neighbours, rescaling equivalence.
Verdict criterion6() {
  RandomStream rng = RandomStream(11).substream(0, StreamPurpose::test);
  const std::size_t dim = 3;
  std::size_t axiom_fail = 0;
  for (int n = 0; n < 100000; ++n) {
    const MetricWeights w{rng.uniform(0.01, 4.0), rng.uniform(0.0, 4.0)};
    const AugmentedMetric m{dim, w};
    double a[4], b[4], c[4];
    for (int i = 0; i < 4; ++i) {
      a[i] = rng.uniform(-10, 10);
      b[i] = rng.uniform(-10, 10);
      c[i] = rng.uniform(-10, 10);
    }
    const double ab = std::sqrt(m.dist2(a, b)), bc = std::sqrt(m.dist2(b, c)), ac = std::sqrt(m.dist2(a, c));
    const bool ok = m.dist2(a, a) == 0.0 && ab >= 0.0 && ab == std::sqrt(m.dist2(b, a)) && ac <= ab + bc + 1e-12;
    axiom_fail += !ok;
  }

  // Lattice points make exact distance ties common.
  std::size_t nn_fail = 0;
  for (int q = 0; q < 1000; ++q) {
    KdTree<AugmentedMetric> tree(dim + 1);
    const MetricWeights w{1.0, q % 3 == 0 ? 0.0 : 0.25 * static_cast<double>(1 + q % 4)};
    const AugmentedMetric m{dim, w};
    std::vector<std::array<double, 4>> pts(200);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (auto& v : pts[i]) v = static_cast<double>(rng.uniform_index(5));
      tree.insert(static_cast<NodeId>(i), pts[i]);
    }
    if (q % 2 == 1) {
      for (std::size_t i = 0; i < pts.size(); i += 7) tree.erase(static_cast<NodeId>(i));
    }
    std::array<double, 4> query;
    for (auto& v : query) v = 0.5 * static_cast<double>(rng.uniform_index(9));
    NodeId best = kNoNode;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (q % 2 == 1 && i % 7 == 0) continue;
      const double d2 = m.dist2(query.data(), pts[i].data());
      if (d2 < bd) {
        bd = d2;
        best = static_cast<NodeId>(i);
      }
    }
    nn_fail += tree.nearest(query, m).first != best;
  }

  // Weights that are powers of two make coordinate rescaling exact.
  std::size_t scale_fail = 0;
  for (int q = 0; q < 1000; ++q) {
    const double sx = std::ldexp(1.0, static_cast<int>(rng.uniform_index(5)) - 2);
    const double sc = std::ldexp(1.0, static_cast<int>(rng.uniform_index(7)) - 3);
    const MetricWeights w{sx * sx, sc * sc};
    NnIndex index(dim, w);
    KdTree<EuclideanMetric> plain(dim + 1);
    for (NodeId i = 0; i < 300; ++i) {
      AugmentedState y{State{rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(-2, 2)}, rng.uniform(0, 20)};
      index.insert(i, y);
      const std::array<double, 4> p{sx * y.x[0], sx * y.x[1], sx * y.x[2], sc * y.c};
      plain.insert(i, p);
    }
    const AugmentedState qy{State{rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(-2, 2)}, rng.uniform(0, 20)};
    const std::array<double, 4> qp{sx * qy.x[0], sx * qy.x[1], sx * qy.x[2], sc * qy.c};
    scale_fail += index.nearest(qy, w) != plain.nearest(qp, EuclideanMetric{dim + 1}).first;
  }
  std::ostringstream d;
  d << "axiom violations " << axiom_fail << "/100000; nearest disagreements " << nn_fail
    << "/1000; rescaling disagreements " << scale_fail << "/1000";
  return {axiom_fail == 0 && nn_fail == 0 && scale_fail == 0, d.str()};
}

// 7. Pruning removes exactly the nodes above the threshold and keeps the best path.
Verdict criterion7() {
  RandomStream rng = RandomStream(12).substream(0, StreamPurpose::test);
  std::size_t bad_sets = 0, lost_paths = 0;
  for (int t = 0; t < 100; ++t) {
    PlanTree tree(State{0.0, 0.0});
    NnIndex index(2, MetricWeights{1.0, 1.0});
    index.insert(0, tree[0].y);
    for (int i = 1; i < 1000; ++i) {
      const auto parent = static_cast<NodeId>(rng.uniform_index(tree.capacity()));
      const double e = rng.uniform(0.0, 2.0);
      const AugmentedState y{State{rng.uniform(0, 10), rng.uniform(0, 10)}, tree[parent].y.c + e};
      const NodeId id = tree.add(parent, y, ControlSegment{Control{0.0}, 1.0}, e, static_cast<std::uint64_t>(i),
                                 NodeOrigin::ao);
      index.insert(id, y);
    }
    const auto best = static_cast<NodeId>(1 + rng.uniform_index(tree.capacity() - 1));
    const double c_best = tree[best].y.c;
    std::vector<NodeId> expect;
    for (std::size_t i = 0; i < tree.capacity(); ++i) {
      if (!(tree[static_cast<NodeId>(i)].y.c > c_best)) expect.push_back(static_cast<NodeId>(i));
    }
    prune(tree, index, c_best);
    bad_sets += tree.live_ids() != expect || index.live_ids() != expect;
    for (NodeId v : tree.path_to(best)) {
      if (!tree.live(v)) {
        ++lost_paths;
        break;
      }
    }
  }
  std::ostringstream d;
  d << "100 trees of 1000 nodes: " << bad_sets << " filtered-set mismatches, " << lost_paths << " broken best paths";
  return {bad_sets == 0 && lost_paths == 0, d.str()};
}

// 8. RK4 convergence order on x' = -x.
Verdict criterion8() {
  const FunctionSystem sys(StateBox{State{-10.0}, State{10.0}}, ControlBox{Control{0.0}, Control{1.0}},
                           [](const State& x, const Control&) { return State{-x[0]}; },
                           [](const State&, const Control&) { return 1.0; });
  std::vector<double> err;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    IntegratorConfig cfg;
    cfg.step = h;
    cfg.max_duration = 1.0;
    const auto r = integrate_joint(sys, State{1.0}, 0.0, Control{0.0}, 1.0, cfg, [](double, const State&, double) {
      return true;
    });
    err.push_back(std::abs(r.x[0] - std::exp(-1.0)));
  }
  bool pass = true;
  std::ostringstream d;
  d << "error ratios";
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double ratio = err[i] / err[i + 1];
    pass = pass && ratio >= 14.0 && ratio <= 18.0;
    d << " " << fmt(ratio);
  }
  d << " (need [14, 18])";
  return {pass, d.str()};
}

double spectral_norm2x2(double a, double b, double c, double d) {
  // Largest singular value of [[a, b], [c, d]].
  const double s1 = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  return std::sqrt(0.5 * (s1 + std::sqrt(std::max(0.0, s1 * s1 - 4.0 * det * det))));
}

// 9. Empirical Lipschitz constants of a linear system against operator norms.
Verdict criterion9() {
  const double A[4] = {0.3, -1.2, 0.8, 0.5};
  const double B[2] = {0.6, -0.4};
  const double cx[2] = {0.05, -0.02};
  const double du = 0.07;
  const FunctionSystem sys(
      StateBox{State{-1.0, -1.0}, State{1.0, 1.0}}, ControlBox{Control{-1.0}, Control{1.0}},
      [&](const State& x, const Control& u) {
        return State{A[0] * x[0] + A[1] * x[1] + B[0] * u[0], A[2] * x[0] + A[3] * x[1] + B[1] * u[0]};
      },
      [&](const State& x, const Control& u) { return 1.0 + cx[0] * x[0] + cx[1] * x[1] + du * u[0]; });
  const LipschitzConstants oracle{spectral_norm2x2(A[0], A[1], A[2], A[3]), std::hypot(B[0], B[1]),
                                  std::hypot(cx[0], cx[1]), std::abs(du)};
  FunctionSystem declared = sys;
  declared.set_declared_lipschitz(oracle);
  RandomStream rng = RandomStream(13).substream(0, StreamPurpose::lipschitz);
  const LipschitzReport rep = verify_lipschitz(declared, rng, 100000);
  const double e = std::max({std::abs(rep.kx_f - oracle.kx_f), std::abs(rep.ku_f - oracle.ku_f),
                             std::abs(rep.kx_g - oracle.kx_g), std::abs(rep.ku_g - oracle.ku_g)});
  std::ostringstream d;
  d << "K_x^f " << fmt(rep.kx_f) << "/" << fmt(oracle.kx_f) << ", K_u^f " << fmt(rep.ku_f) << "/" << fmt(oracle.ku_f)
    << ", K_x^g " << fmt(rep.kx_g) << "/" << fmt(oracle.kx_g) << ", K_u^g " << fmt(rep.ku_g) << "/" << fmt(oracle.ku_g)
    << "; max deviation " << fmt(e) << "; sampled F u-ratio " << fmt(rep.ku_aug) << " vs bound "
    << fmt(oracle.augmented_ku()) << (rep.composition_holds ? " (holds)" : " (EXCEEDED)");
  return {e <= 1e-6 && rep.composition_holds, d.str()};
}

std::string slurp(const std::string& path) { return read_text_file(path); }

// 10. Byte-identical CSV across repeated runs and thread counts.
Verdict criterion10() {
  const auto dir = std::filesystem::temp_directory_path() / "aorrt_acceptance_determinism";
  std::filesystem::create_directories(dir);
  const auto cfg_path = (dir / "bench.json").string();
  write_text_file(cfg_path,
                  "{\"scenario\": \"di2d_two_boxes\", \"planners\": [\"rrt\", \"ao-rrt\", \"ao-rrt-prune\", "
                  "\"multi-tree\", \"hybrid\", \"sst\"], \"trials\": 8, \"iterations\": 5000, "
                  "\"checkpoints\": [1000, 2500, 5000], \"seed\": 42}\n");
  std::vector<std::string> raw, summary;
  std::ostringstream d;
  if (!plan_binary.empty()) {
    int run = 0;
    for (int threads : {1, 1, 4}) {
      const std::string prefix = (dir / ("run" + std::to_string(run++))).string();
      const std::string cmd = "\"" + plan_binary + "\" bench --config \"" + cfg_path + "\" --threads " +
                              std::to_string(threads) + " --out \"" + prefix + "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "plan bench exited with an error"};
      raw.push_back(slurp(prefix + ".raw.csv"));
      summary.push_back(slurp(prefix + ".summary.csv"));
    }
    d << "plan bench runs (threads 1, 1, 4)";
  } else {
    BenchConfig cfg = load_bench_config(cfg_path);
    const Scenario sc = load_scenario(cfg.scenario);
    for (std::size_t threads : {1, 1, 4}) {
      cfg.threads = threads;
      const BenchOutput b = run_benchmark(cfg, sc);
      raw.push_back(raw_csv(b));
      summary.push_back(summary_csv(b));
    }
    d << "in-process benchmark runs (threads 1, 1, 4)";
  }
  bool same = true;
  for (std::size_t i = 1; i < raw.size(); ++i) same = same && raw[i] == raw[0] && summary[i] == summary[0];
  d << ", " << raw[0].size() + summary[0].size() << " CSV bytes each: " << (same ? "identical" : "DIFFERENT");
  return {same, d.str()};
}

// 11. Cost weight sweep: w_c = 0 behaves like RRT, w_c > 0 keeps improving.
Verdict criterion11() {
  const Scenario sc = find_builtin("geo2d_one_box");
  bool pass = true;
  std::ostringstream d;
  d << "mean (first - final)/first over 30 trials, 5e4 iterations:";
  for (double wc : {0.0, 0.2, 1.0}) {
    ParamOverrides ov;
    ov.w_x = 1.0;
    ov.w_c = wc;
    const BenchOutput b = bench(sc, {PlannerVariant::ao_rrt}, 30, 50000, std::nullopt, ov);
    std::vector<double> imp;
    for (const auto& t : b.trials) {
      if (t.first_cost && t.best_cost) imp.push_back((*t.first_cost - *t.best_cost) / *t.first_cost);
    }
    const double m = mean_of(imp);
    const bool ok = wc == 0.0 ? m < 0.02 : m >= 0.15;
    pass = pass && ok;
    d << " w_c=" << fmt(wc) << ": " << fmt(100.0 * m) << "% (" << (wc == 0.0 ? "need < 2%" : "need >= 15%")
      << (ok ? "" : ", FAIL") << ")";
  }
  return {pass, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--plan" && i + 1 < argc) {
      plan_binary = argv[++i];
    } else {
      only.insert(std::stoi(a));
    }
  }
  // The bookkeeping check also covers every benchmark run before it, so it goes last.
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},   {6, criterion6},  {7, criterion7},
      {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11}, {5, criterion5},
  };
  int failures = 0;
  for (const auto& [n, fn] : criteria) {
    if (!only.empty() && !only.count(n)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !v.pass;
    std::printf("%s criterion %d: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", n, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
