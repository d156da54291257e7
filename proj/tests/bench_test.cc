// Copyright 2026 The mcfpred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcfpred/bench.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "mcfpred/generators.h"
#include "mcfpred/io.h"
#include "mcfpred/ssp.h"
#include "test_util.h"

namespace mcfpred {
namespace {

namespace fs = std::filesystem;

class BenchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ =
        fs::temp_directory_path() /
        ("mcfpred_bench_" +
         std::string(
             ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string put(const std::string& name, const std::string& text) {
    const std::string path = (dir_ / name).string();
    write_text_file(path, text);
    return path;
  }

  fs::path dir_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::uint64_t report_value(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string k, v;
  while (in >> k >> v) {
    if (k == key) return std::stoull(v);
  }
  return 0;
}

TEST(SolverNameTest, RoundTrip) {
  for (const char* name :
       {"eps-vanilla", "eps-scaled", "eps-warm", "eps-cold", "ssp"}) {
    const auto k = parse_solver(name);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(solver_name(*k), name);
  }
  EXPECT_FALSE(parse_solver("simplex").has_value());
}

TEST(RunSolverTest, WarmRequiresPrediction) {
  SolverOptions opts;
  opts.solver = SolverKind::kEpsWarm;
  EXPECT_THROW(run_solver(testing::two_node(), opts), std::invalid_argument);
}

TEST_F(BenchTest, SolvePrintsCost) {
  const std::string path = put("two.min", write_dimacs(testing::two_node()));
  std::ostringstream out, err;
  SolveCommand cmd{path, std::nullopt, {}, true};
  EXPECT_EQ(cmd_solve(cmd, out, err), kExitOk);
  EXPECT_NE(out.str().find("cost 6\n"), std::string::npos);
  EXPECT_NE(out.str().find("verify brute_force 6 agree"), std::string::npos);
}

TEST_F(BenchTest, ExactPredictionBeatsColdRun) {
  const Instance inst = gen_road_grid(
      RoadGridSpec{.rows = 8, .cols = 8, .sources = 6, .sinks = 6});
  const std::string path = put("grid.min", write_dimacs(inst));
  const std::vector<double> exact = testing::to_real(ssp_solve(inst).dual);
  const std::string pred = put("grid.pred", write_prediction(exact));
  std::ostringstream cold_out, warm_out, err;
  SolveCommand cold{path, std::nullopt, {}, false};
  ASSERT_EQ(cmd_solve(cold, cold_out, err), kExitOk);
  SolveCommand warm{path, pred, {}, false};
  warm.options.error_estimate = 0;
  ASSERT_EQ(cmd_solve(warm, warm_out, err), kExitOk);
  EXPECT_LT(report_value(warm_out.str(), "pushes"),
            report_value(cold_out.str(), "pushes"));
  EXPECT_LT(report_value(warm_out.str(), "price_rises"),
            report_value(cold_out.str(), "price_rises"));
  EXPECT_EQ(report_value(warm_out.str(), "cost"),
            report_value(cold_out.str(), "cost"));
}

TEST_F(BenchTest, ExitCodes) {
  std::ostringstream out, err;
  SolveCommand missing{(dir_ / "nope.min").string(), std::nullopt, {}, false};
  EXPECT_EQ(cmd_solve(missing, out, err), kExitInput);
  EXPECT_NE(err.str().find("nope.min"), std::string::npos);

  SolveCommand bad{
      put("bad.min", "p min 2 1\na 1 5 0 1 1\n"), std::nullopt, {}, false};
  EXPECT_EQ(cmd_solve(bad, out, err), kExitInput);

  SolveCommand infeasible{
      put("inf.min", "p min 2 1\nn 1 2\nn 2 -2\na 1 2 0 1 1\n"),
      std::nullopt,
      {},
      false};
  EXPECT_EQ(cmd_solve(infeasible, out, err), kExitInfeasible);

  const Instance grid = gen_road_grid(
      RoadGridSpec{.rows = 6, .cols = 6, .sources = 4, .sinks = 4});
  SolveCommand budget{
      put("grid.min", write_dimacs(grid)), std::nullopt, {}, false};
  budget.options.budget = 5;
  EXPECT_EQ(cmd_solve(budget, out, err), kExitBudget);

  SolveCommand warm{put("two.min", write_dimacs(testing::two_node())),
                    std::nullopt,
                    {},
                    false};
  warm.options.solver = SolverKind::kEpsWarm;
  EXPECT_EQ(cmd_solve(warm, out, err), kExitUsage);

  SolveCommand shape = warm;
  shape.prediction_path = put("p.txt", "d 3 1\n");
  EXPECT_EQ(cmd_solve(shape, out, err), kExitInput);
}

TEST_F(BenchTest, VerifyLargeEpsFailsAgreement) {
  const Instance inst = testing::diamond();
  SolveCommand cmd{put("d.min", write_dimacs(inst)),
                   put("d.pred", "d 1 0\nd 2 0\nd 3 0\nd 4 0\n"),
                   {},
                   true};
  cmd.options.solver = SolverKind::kEpsVanilla;
  cmd.options.eps = 100;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve(cmd, out, err), kExitVerifyFailed);
}

TEST_F(BenchTest, VerifyAllSolversAgree) {
  const Instance inst = gen_random_instance(RandomInstanceSpec{.seed = 12});
  const std::string pred = put(
      "p.txt", write_prediction(std::vector<double>(inst.node_count(), 3.0)));
  SolveCommand cmd{put("r.min", write_dimacs(inst)), pred, {}, false};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(cmd, out, err), kExitOk) << err.str();
  std::size_t solvers = 0;
  for (std::size_t at = out.str().find("solver "); at != std::string::npos;
       at = out.str().find("solver ", at + 1)) {
    ++solvers;
  }
  EXPECT_EQ(solvers, 5u);
}

TEST(SweepTest, LevelZeroRowsAreOptimalAndCheap) {
  const Instance inst = gen_road_grid(
      RoadGridSpec{.rows = 8, .cols = 8, .sources = 6, .sinks = 6});
  SweepConfig cfg;
  cfg.levels = {0};
  cfg.full_range = false;
  cfg.seeds = 3;
  const std::vector<RunRow> rows = run_sweep(inst, cfg);
  ASSERT_EQ(rows.size(), 6u);
  const std::int64_t opt = primal_cost(inst, ssp_solve(inst).flow);
  for (const RunRow& r : rows) {
    ASSERT_EQ(r.status, "ok");
    EXPECT_EQ(*r.cost, opt);
  }
  for (int k = 3; k < 6; ++k) {
    EXPECT_LT(rows[k].stats.operations(), rows[0].stats.operations());
    EXPECT_EQ(rows[k].level, 0.0);
  }
  EXPECT_FALSE(rows[0].level.has_value());
}

TEST(SweepTest, CostConstantAcrossFullSweepAndCsvShape) {
  const Instance inst = gen_road_grid(
      RoadGridSpec{.rows = 6, .cols = 6, .sources = 4, .sinks = 4});
  SweepConfig cfg;
  cfg.seeds = 2;
  cfg.solvers = {SolverKind::kEpsWarm, SolverKind::kEpsScaled};
  const std::vector<RunRow> rows = run_sweep(inst, cfg);
  // 2 cold rows + 6 levels x 2 seeds x 2 solvers.
  ASSERT_EQ(rows.size(), 2u + 6 * 2 * 2);
  std::set<std::int64_t> costs;
  for (const RunRow& r : rows) {
    ASSERT_EQ(r.status, "ok");
    costs.insert(*r.cost);
  }
  EXPECT_EQ(costs.size(), 1u);
  const auto table = csv_rows(sweep_csv(rows));
  EXPECT_EQ(table[0], (std::vector<std::string>{
                          "level", "seed", "solver", "status", "cost", "pushes",
                          "price_rises", "node_iterations", "phases",
                          "wall_time", "error"}));
  for (std::size_t i = 1; i < table.size(); ++i)
    EXPECT_EQ(table[i].size(), 11u);
  EXPECT_EQ(table.back()[0], std::to_string((36 - 1) * inst.max_cost()));
}

TEST(SweepTest, RejectsBadConfig) {
  SweepConfig cfg;
  cfg.levels = {3, 1};
  EXPECT_THROW(run_sweep(testing::two_node(), cfg), std::invalid_argument);
  cfg.levels = {1};
  cfg.seeds = 0;
  EXPECT_THROW(run_sweep(testing::two_node(), cfg), std::invalid_argument);
}

TEST(SweepTest, ErrorsGoToTheErrorColumn) {
  const Instance inst = gen_road_grid(
      RoadGridSpec{.rows = 6, .cols = 6, .sources = 4, .sinks = 4});
  SweepConfig cfg;
  cfg.levels = {0};
  cfg.full_range = false;
  cfg.seeds = 1;
  cfg.options.budget = 3;
  const std::vector<RunRow> rows = run_sweep(inst, cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const RunRow& r : rows) {
    EXPECT_EQ(r.status, "budget");
    EXPECT_FALSE(r.error.empty());
  }
}

TEST_F(BenchTest, BenchTwoSolversAgree) {
  const std::string path = put("r.min", write_dimacs(gen_random_instance({})));
  BenchConfig cfg;
  cfg.solvers = {SolverKind::kEpsCold, SolverKind::kSsp};
  const std::string csv_path = (dir_ / "out.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_bench({path}, cfg, csv_path, out, err), kExitOk);
  const auto table = csv_rows(read_text_file(csv_path));
  ASSERT_EQ(table.size(), 1u + 2 + 2);
  EXPECT_EQ(table[0].size(), 11u);
  EXPECT_EQ(table[1][3], table[2][3]);
  EXPECT_EQ(table[3][0], "avg.");
  EXPECT_EQ(table[3][9], "1");
}

TEST_F(BenchTest, EmptyBenchIsHeaderOnly) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_bench({}, BenchConfig{}, std::nullopt, out, err), kExitOk);
  EXPECT_EQ(csv_rows(out.str()).size(), 1u);
}

TEST(RunBenchTest, MissingPredictionIsReportedPerRow) {
  std::vector<BenchInput> inputs{{"two", testing::two_node(), std::nullopt}};
  const std::vector<RunRow> rows = run_bench(inputs, BenchConfig{});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].status, "error");
  EXPECT_EQ(rows[1].status, "ok");
  EXPECT_FALSE(rows[1].op_ratio.has_value());
}

TEST(RunBenchTest, LearnedPredictionOnPerturbedFamily) {
  const Instance base = gen_road_grid(
      RoadGridSpec{.rows = 8, .cols = 8, .sources = 5, .sinks = 5});
  const auto train = perturb_costs(PerturbSpec{base, 0.1, 1, 10});
  const auto held_out = perturb_costs(PerturbSpec{base, 0.1, 2, 5});
  std::vector<BenchInput> inputs;
  const std::vector<double> pred = testing::to_real(ssp_solve(train[0]).dual);
  for (std::size_t i = 0; i < held_out.size(); ++i) {
    inputs.push_back({"s" + std::to_string(i), held_out[i], pred});
  }
  BenchConfig cfg;
  cfg.options.error_estimate = 5;
  const std::vector<RunRow> rows = run_bench(inputs, cfg);
  const RunRow& cold_avg = rows.back();
  EXPECT_EQ(cold_avg.instance, "avg.");
  EXPECT_EQ(cold_avg.solver, "eps-cold");
  ASSERT_TRUE(cold_avg.op_ratio.has_value());
  EXPECT_GT(*cold_avg.op_ratio, 1.0);
}

TEST_F(BenchTest, LearnPipeline) {
  const std::string one = put("one.min", write_dimacs(testing::two_node()));
  const std::string out_path = (dir_ / "p.txt").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_learn({one}, out_path, out, err), kExitOk);
  EXPECT_NE(out.str().find("error_estimate 0\n"), std::string::npos);
  const Prediction p = read_prediction_file(out_path, 2);
  EXPECT_EQ(p, testing::to_real(ssp_solve(testing::two_node()).dual));

  const Instance base = gen_road_grid(
      RoadGridSpec{.rows = 4, .cols = 4, .sources = 3, .sinks = 3});
  std::vector<std::string> paths;
  int k = 0;
  for (const Instance& s : perturb_costs(PerturbSpec{base, 0.1, 4, 10})) {
    paths.push_back(put("s" + std::to_string(k++) + ".min", write_dimacs(s)));
  }
  std::ostringstream out2;
  ASSERT_EQ(cmd_learn(paths, out_path, out2, err), kExitOk);
  std::istringstream rep(out2.str());
  std::string key;
  double loss = 0, est = 0;
  rep >> key >> loss >> key >> est;
  EXPECT_GT(est, 0.0);
  EXPECT_EQ(read_prediction_file(out_path, 16).size(), 16u);

  const std::string other = put("d.min", write_dimacs(testing::diamond()));
  EXPECT_EQ(cmd_learn({one, other}, out_path, out, err), kExitInput);
}

TEST_F(BenchTest, GenPerturbEscapeAndDeterminism) {
  std::ostringstream out, err;
  GenCommand perturb;
  perturb.mode = "perturb";
  perturb.base_path =
      put("base.min", write_dimacs(gen_road_grid(RoadGridSpec{
                          .rows = 4, .cols = 4, .sources = 3, .sinks = 3})));
  perturb.samples = 3;
  perturb.output_dir = (dir_ / "a").string();
  ASSERT_EQ(cmd_gen(perturb, out, err), kExitOk);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(perturb.output_dir)) {
    ++files;
    EXPECT_NO_THROW(read_dimacs_file(entry.path().string()));
  }
  EXPECT_EQ(files, 3);
  GenCommand again = perturb;
  again.output_dir = (dir_ / "b").string();
  ASSERT_EQ(cmd_gen(again, out, err), kExitOk);
  for (const char* name :
       {"sample_000.min", "sample_001.min", "sample_002.min"}) {
    EXPECT_EQ(read_text_file((fs::path(perturb.output_dir) / name).string()),
              read_text_file((fs::path(again.output_dir) / name).string()));
  }

  GenCommand escape;
  escape.mode = "escape";
  escape.width = 2;
  escape.height = 2;
  escape.pins = 1;
  escape.obstacle_rate = 0;
  escape.output_dir = (dir_ / "e").string();
  ASSERT_EQ(cmd_gen(escape, out, err), kExitOk);
  EXPECT_TRUE(fs::exists(fs::path(escape.output_dir) / "escape.min"));
  EXPECT_TRUE(fs::exists(fs::path(escape.output_dir) / "escape.roles"));

  GenCommand unknown;
  unknown.mode = "maze";
  unknown.output_dir = (dir_ / "u").string();
  EXPECT_EQ(cmd_gen(unknown, out, err), kExitUsage);
}

}  // namespace
}  // namespace mcfpred
