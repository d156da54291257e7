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

// Command implementations behind the mcfpred tool. Every command writes its
// report to `out`, diagnostics to `err`, and returns a process exit code.

#ifndef MCFPRED_BENCH_H_
#define MCFPRED_BENCH_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mcfpred/core.h"

namespace mcfpred {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitInfeasible = 3,
  kExitBudget = 4,
  kExitVerifyFailed = 5,
};

enum class SolverKind { kEpsVanilla, kEpsScaled, kEpsWarm, kEpsCold, kSsp };

std::optional<SolverKind> parse_solver(std::string_view name);
std::string_view solver_name(SolverKind kind);

struct SolverOptions {
  SolverKind solver = SolverKind::kEpsScaled;
  // Required by eps-warm and eps-vanilla; eps-scaled falls back to a cold
  // start without it.
  std::optional<Prediction> prediction;
  // In original cost units, as printed by the learner.
  std::optional<double> error_estimate;
  std::optional<int> explicit_T;
  int base = 2;
  // Only eps-vanilla runs at a caller-chosen epsilon.
  Cost eps = 1;
  std::optional<std::uint64_t> budget;
};

// Throws std::invalid_argument when a prediction is required but missing.
SolveResult run_solver(const Instance& inst, const SolverOptions& opts);

struct VerifyReport {
  bool feasible = false;
  bool complementary_slackness = false;
  std::optional<std::int64_t> reference_cost;  // ssp_solve
  std::optional<std::int64_t> brute_force_cost;
  std::int64_t cost = 0;

  bool ok() const;
};

// Feasibility, (epsilon-)CS on the solver's own cost grid and cost agreement
// with the SSP baseline and, for small instances, the brute-force optimum.
VerifyReport verify_solution(const Instance& inst, const SolverOptions& opts,
                             const SolveResult& result,
                             NodeIndex brute_force_max_nodes = 12);

struct SolveCommand {
  std::string instance_path;
  std::optional<std::string> prediction_path;
  SolverOptions options;
  bool verify = false;
};
int cmd_solve(const SolveCommand& cmd, std::ostream& out, std::ostream& err);

// Runs every solver on the instance and verifies each result; eps-warm and
// eps-vanilla take part only when a prediction is supplied.
int cmd_verify(const SolveCommand& cmd, std::ostream& out, std::ostream& err);

struct SweepConfig {
  std::vector<double> levels{0, 2, 8, 32, 128};
  // Appends the level (n-1)C, the largest error preprocessing can leave.
  bool full_range = true;
  int seeds = 10;
  std::uint64_t first_seed = 1;
  std::vector<SolverKind> solvers{SolverKind::kEpsWarm};
  SolverOptions options;  // base, T, budget
};

struct RunRow {
  std::string instance;         // bench only
  std::optional<double> level;  // sweep only; empty for cold rows
  std::uint64_t seed = 0;       // sweep only
  std::string solver;
  std::string status;  // ok, infeasible, budget, error
  std::optional<std::int64_t> cost;
  SolveStats stats;
  std::optional<double> op_ratio;  // bench only
  std::string error;
};

// Column order is fixed:
// level,seed,solver,status,cost,pushes,price_rises,node_iterations,phases,
// wall_time,error
std::vector<RunRow> run_sweep(const Instance& inst, const SweepConfig& cfg);
std::string sweep_csv(const std::vector<RunRow>& rows);
int cmd_sweep(const std::string& instance_path, const SweepConfig& cfg,
              const std::optional<std::string>& csv_path, std::ostream& out,
              std::ostream& err);

struct BenchConfig {
  std::vector<SolverKind> solvers{SolverKind::kEpsWarm, SolverKind::kEpsCold};
  std::optional<std::string> prediction_path;
  SolverOptions options;
};

struct BenchInput {
  std::string name;
  Instance instance;
  std::optional<Prediction> prediction;
};

// Rows per (instance, solver) in input order, then one "avg." row per solver
// holding the geometric mean of op_ratio. op_ratio is the solver's op count
// over the reference solver's (eps-warm when listed, else the first one).
std::vector<RunRow> run_bench(const std::vector<BenchInput>& inputs,
                              const BenchConfig& cfg);
// Column order is fixed:
// instance,solver,status,cost,pushes,price_rises,node_iterations,phases,
// wall_time,op_ratio,error
std::string bench_csv(const std::vector<RunRow>& rows);
int cmd_bench(const std::vector<std::string>& instance_paths,
              const BenchConfig& cfg,
              const std::optional<std::string>& csv_path, std::ostream& out,
              std::ostream& err);

int cmd_learn(const std::vector<std::string>& instance_paths,
              const std::string& output_path, std::ostream& out,
              std::ostream& err);

struct GenCommand {
  std::string mode;  // perturb, escape, random, grid
  std::string output_dir;
  std::uint64_t seed = 1;
  // perturb
  std::string base_path;
  int samples = 10;
  double sigma = 0.1;
  // escape
  int width = 30;
  int height = 30;
  int pins = 20;
  double obstacle_rate = 0.05;
  Cost pitch = 1;
  // grid
  int rows = 32;
  int cols = 32;
  // random
  int max_nodes = 12;
};
int cmd_gen(const GenCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace mcfpred

#endif  // MCFPRED_BENCH_H_
