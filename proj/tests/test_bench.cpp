#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "aorrt/bench/convergence.hpp"

using namespace aorrt;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("aorrt_bench_" + name)).string();
}

std::vector<std::vector<std::string>> rows_of(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ls(line);
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    out.push_back(fields);
  }
  return out;
}

BenchConfig small_config(std::uint64_t k, std::size_t trials) {
  BenchConfig c;
  c.scenario = "di2d_two_boxes";
  c.planners = {PlannerVariant::rrt, PlannerVariant::ao_rrt};
  c.trials = trials;
  c.iterations = k;
  return c;
}

}  // namespace

TEST(RunBenchmark, ZeroIterationsSingleTrial) {
  const BenchOutput b = run_benchmark(small_config(0, 1), find_builtin("di2d_two_boxes"));
  ASSERT_EQ(b.summary.size(), 2u);
  for (const auto& row : b.summary) {
    EXPECT_EQ(row.success_rate, 0.0);
    EXPECT_FALSE(row.mean_cost);
  }
  for (const auto& row : rows_of(summary_csv(b))) {
    ASSERT_EQ(row.size(), 6u);
    if (row[0] != "planner") {
      EXPECT_EQ(row[3], "");
    }
  }
}

TEST(RunBenchmark, SameSeedSameCsv) {
  BenchConfig c = small_config(3000, 4);
  c.checkpoints = {1000, 3000};
  const Scenario sc = find_builtin(c.scenario);
  const BenchOutput a = run_benchmark(c, sc);
  c.threads = 3;
  const BenchOutput b = run_benchmark(c, sc);
  EXPECT_EQ(raw_csv(a), raw_csv(b));
  EXPECT_EQ(summary_csv(a), summary_csv(b));
  c.base_seed = 2;
  EXPECT_NE(raw_csv(a), raw_csv(run_benchmark(c, sc)));
}

TEST(RunBenchmark, RecordsAreOrderedAndComplete) {
  BenchConfig c = small_config(2000, 3);
  c.checkpoints = {500, 1000, 2000};
  const BenchOutput b = run_benchmark(c, find_builtin(c.scenario));
  ASSERT_EQ(b.records.size(), 2u * 3u * 3u);
  std::size_t i = 0;
  for (PlannerVariant pv : c.planners) {
    for (std::size_t t = 0; t < 3; ++t) {
      for (double cp : c.checkpoints) {
        EXPECT_EQ(b.records[i].planner, pv);
        EXPECT_EQ(b.records[i].trial, t);
        EXPECT_EQ(b.records[i].checkpoint, cp);
        ++i;
      }
    }
  }
  for (const auto& t : b.trials) {
    ASSERT_TRUE(t.tree_check);
    EXPECT_TRUE(t.tree_check->ok());
  }
}

TEST(RunBenchmark, InvalidOverridesAreRejected) {
  Scenario sc = find_builtin("geo2d_one_box");
  BenchConfig c = small_config(100, 2);
  c.overrides.t_prop = -1.0;
  EXPECT_THROW(run_benchmark(c, sc), ParameterError);
}

TEST(EmitCsv, EmptyRecordsGiveHeaderOnly) {
  const BenchOutput b;
  const std::string prefix = temp_path("empty");
  emit_csv(b, prefix);
  EXPECT_EQ(read_text_file(prefix + ".raw.csv"), "planner,trial,checkpoint,success,best_cost,nodes,pruned\n");
  EXPECT_EQ(read_text_file(prefix + ".summary.csv"), "planner,checkpoint,success_rate,mean_cost,std_cost,n_success\n");
  std::filesystem::remove(prefix + ".raw.csv");
  std::filesystem::remove(prefix + ".summary.csv");
}

TEST(EmitCsv, SingleRecordHasSevenFields) {
  BenchOutput b;
  b.records.push_back(BenchRecord{PlannerVariant::ao_rrt, 0, 1000.0, true, 12.3456789, 42, 3});
  const auto rows = rows_of(raw_csv(b));
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_EQ(rows[1].size(), 7u);
  EXPECT_EQ(rows[1][0], "ao-rrt");
  EXPECT_EQ(rows[1][2], "1000");
  EXPECT_EQ(rows[1][4], "12.3457");
}

TEST(EmitCsv, WriteFailureNamesPath) {
  try {
    emit_csv(BenchOutput{}, "/nonexistent_dir_for_test/out");
    FAIL() << "expected an I/O error";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent_dir_for_test/out"), std::string::npos);
  }
}

TEST(Summary, SuccessRateIsExactFraction) {
  std::vector<BenchRecord> recs;
  for (std::size_t t = 0; t < 50; ++t) {
    const bool ok = t < 47;
    recs.push_back(BenchRecord{PlannerVariant::sst, t, 1.0, ok, ok ? std::optional<double>(1.0 + t) : std::nullopt, 1, 0});
  }
  const auto rows = summarize(recs, {PlannerVariant::sst}, {1.0}, 50);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].success_rate, 47.0 / 50.0);
  EXPECT_EQ(fmt6(rows[0].success_rate), "0.94");
  EXPECT_EQ(rows[0].n_success, 47u);
  EXPECT_DOUBLE_EQ(*rows[0].mean_cost, 24.0);
  // Sample standard deviation of 1..47.
  EXPECT_NEAR(*rows[0].std_cost, std::sqrt(47.0 * 48.0 / 12.0), 1e-9);
}

TEST(Summary, RecomputableFromRawCsv) {
  BenchConfig c = small_config(4000, 5);
  c.checkpoints = {2000, 4000};
  const BenchOutput b = run_benchmark(c, find_builtin(c.scenario));
  const auto raw = rows_of(raw_csv(b));
  for (const auto& s : b.summary) {
    std::size_t n = 0;
    double sum = 0.0;
    for (std::size_t i = 1; i < raw.size(); ++i) {
      if (raw[i][0] != variant_name(s.planner) || raw[i][2] != format_checkpoint(s.checkpoint, true)) continue;
      if (raw[i][3] == "1") {
        ++n;
        sum += std::stod(raw[i][4]);
      }
    }
    EXPECT_EQ(n, s.n_success);
    EXPECT_EQ(s.success_rate, static_cast<double>(n) / 5.0);
    if (n) {
      EXPECT_NEAR(sum / n, *s.mean_cost, 1e-5 * *s.mean_cost);
    }
  }
}

TEST(BenchConfigJson, ParsesAndValidates) {
  const nlohmann::json j = nlohmann::json::parse(R"({"scenario": "geo2d_one_box", "planners": ["rrt", "sst"],
    "trials": 7, "iterations": 900, "checkpoints": [300, 900], "seed": 5, "threads": 2, "w_c": 0.2, "goal_bias": 0.0})");
  const BenchConfig c = bench_config_from_json(j);
  EXPECT_EQ(c.planners, (std::vector<PlannerVariant>{PlannerVariant::rrt, PlannerVariant::sst}));
  EXPECT_EQ(c.trials, 7u);
  EXPECT_EQ(c.iterations, std::optional<std::uint64_t>(900));
  EXPECT_EQ(c.base_seed, 5u);
  EXPECT_EQ(c.overrides.w_c, std::optional<double>(0.2));
  PlannerParams p = find_builtin("geo2d_one_box").default_params();
  c.overrides.apply(p);
  EXPECT_EQ(p.weights.w_c, 0.2);
  EXPECT_EQ(p.goal_bias, 0.0);

  EXPECT_THROW(bench_config_from_json(nlohmann::json::parse(R"({"scenario": "x", "planners": ["fast"], "iterations": 1})")),
               ParameterError);
  EXPECT_THROW(bench_config_from_json(nlohmann::json::parse(R"({"scenario": "x", "planners": ["rrt"]})")), ParameterError);
}

TEST(BenchConfigJson, SyntaxErrorReportsLine) {
  const std::string path = temp_path("bad_config.json");
  write_text_file(path, "{\n  \"scenario\": \"geo2d_one_box\",\n  \"planners\": [rrt]\n}\n");
  try {
    load_bench_config(path);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(path + ":3"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
}

TEST(Convergence, AbsurdEpsilonCountsOnlyUnsolved) {
  ConvergenceConfig c;
  c.epsilons = {1e6};
  c.k_grid = {0, 200, 20000};
  c.trials = 6;
  const ConvergenceOutput out = convergence_experiment(find_builtin("di1d_rest_to_rest"), c);
  ASSERT_EQ(out.rows.size(), 3u);
  EXPECT_EQ(out.rows[0].failure_rate, 1.0);
  for (std::size_t j = 0; j < 3; ++j) {
    std::size_t unsolved = 0;
    for (const auto& t : out.best_cost) unsolved += !t[j];
    EXPECT_EQ(out.rows[j].failures, unsolved);
  }
  EXPECT_LT(out.rows[2].failure_rate, 1.0);
  EXPECT_DOUBLE_EQ(out.oracle, 4.0);
}

TEST(Convergence, MultiTreeRerunsPerK) {
  ConvergenceConfig c;
  c.planner = PlannerVariant::multi_tree_ao;
  c.epsilons = {1e6};
  c.k_grid = {0, 5000};
  c.trials = 3;
  const ConvergenceOutput out = convergence_experiment(find_builtin("di1d_rest_to_rest"), c);
  EXPECT_EQ(out.rows[0].failure_rate, 1.0);
}

TEST(Convergence, RequiresOracle) {
  ConvergenceConfig c;
  c.epsilons = {0.1};
  c.k_grid = {10};
  EXPECT_THROW(convergence_experiment(find_builtin("car_parking_lite"), c), ParameterError);
  c.k_grid = {10, 10};
  EXPECT_THROW(convergence_experiment(find_builtin("di1d_rest_to_rest"), c), ParameterError);
}

TEST(Convergence, CsvLayout) {
  ConvergenceOutput out;
  out.rows.push_back(ConvergenceRow{PlannerVariant::ao_rrt, 0.3, 5000, 30, 6, 0.2});
  EXPECT_EQ(convergence_csv(out), "planner,epsilon,k,trials,failures,failure_rate\nao-rrt,0.3,5000,30,6,0.2\n");
}
