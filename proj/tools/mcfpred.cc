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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcfpred/bench.h"
#include "mcfpred/io.h"

namespace {

using mcfpred::SolverKind;

struct SolverFlags {
  std::string solver = "eps-scaled";
  std::optional<double> err_estimate;
  std::optional<int> T;
  int c = 2;
  std::int64_t eps = 1;
  std::optional<std::uint64_t> budget;
};

void add_solver_flags(CLI::App* app, SolverFlags& f, bool with_solver) {
  if (with_solver) {
    app->add_option("--solver", f.solver, "Solver")
        ->check(CLI::IsMember(
            {"eps-vanilla", "eps-scaled", "eps-warm", "eps-cold", "ssp"}));
  }
  app->add_option("--err-estimate", f.err_estimate,
                  "Estimated infinity-norm prediction error");
  app->add_option("--T", f.T, "Number of scaling phases");
  app->add_option("--c", f.c, "Scaling base")->check(CLI::Range(2, 4));
  app->add_option("--eps", f.eps, "Epsilon for eps-vanilla")
      ->check(CLI::PositiveNumber);
  app->add_option("--budget", f.budget, "Operation budget");
}

mcfpred::SolverOptions to_options(const SolverFlags& f) {
  mcfpred::SolverOptions o;
  o.solver = *mcfpred::parse_solver(f.solver);
  o.error_estimate = f.err_estimate;
  o.explicit_T = f.T;
  o.base = f.c;
  o.eps = f.eps;
  o.budget = f.budget;
  return o;
}

std::vector<SolverKind> to_solvers(const std::vector<std::string>& names) {
  std::vector<SolverKind> out;
  for (const std::string& n : names) {
    const auto k = mcfpred::parse_solver(n);
    if (!k) throw CLI::ValidationError("--solvers", "unknown solver " + n);
    out.push_back(*k);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-cost flow with dual-prediction warm starts"};
  app.require_subcommand(1);

  SolverFlags flags;
  std::string instance;
  std::optional<std::string> prediction;
  std::optional<std::string> csv;
  bool verify = false;

  auto* solve = app.add_subcommand("solve", "Solve one DIMACS instance");
  solve->add_option("instance", instance, "DIMACS file")->required();
  solve->add_option("--prediction", prediction, "Prediction file");
  solve->add_flag("--verify", verify, "Check the result");
  add_solver_flags(solve, flags, true);

  auto* verify_cmd =
      app.add_subcommand("verify", "Run and verify every solver");
  verify_cmd->add_option("instance", instance, "DIMACS file")->required();
  verify_cmd->add_option("--prediction", prediction, "Prediction file");
  add_solver_flags(verify_cmd, flags, false);

  mcfpred::SweepConfig sweep_cfg;
  std::optional<std::string> config_path;
  std::string levels_arg;
  std::string solvers_arg = "eps-warm";
  std::uint64_t seed = 1;
  auto* sweep =
      app.add_subcommand("sweep", "Sweep synthesized prediction errors");
  sweep->add_option("instance", instance, "DIMACS file")->required();
  sweep->add_option("--levels", levels_arg, "Comma-separated error levels");
  sweep->add_option("--seeds", sweep_cfg.seeds, "Seeds per level")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "First seed");
  sweep->add_option("--solvers", solvers_arg, "Comma-separated solvers");
  sweep->add_flag("!--no-full-range", sweep_cfg.full_range,
                  "Skip the (n-1)C level");
  sweep->add_option("--config", config_path, "key=value file");
  sweep->add_option("--csv", csv, "Output CSV path");
  add_solver_flags(sweep, flags, false);

  std::vector<std::string> instances;
  mcfpred::BenchConfig bench_cfg;
  std::string bench_solvers = "eps-warm,eps-cold";
  auto* bench = app.add_subcommand("bench", "Compare solvers on instances");
  bench->add_option("instances", instances, "DIMACS files");
  bench->add_option("--solvers", bench_solvers, "Comma-separated solvers");
  bench->add_option("--prediction", prediction, "Prediction file");
  bench->add_option("--csv", csv, "Output CSV path");
  add_solver_flags(bench, flags, false);

  std::string output;
  auto* learn = app.add_subcommand("learn", "Learn a fixed prediction");
  learn->add_option("instances", instances, "DIMACS files")->required();
  learn->add_option("-o,--output", output, "Prediction file")->required();

  mcfpred::GenCommand gen_cmd;
  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->add_option("mode", gen_cmd.mode, "perturb, escape, random or grid")
      ->required()
      ->check(CLI::IsMember({"perturb", "escape", "random", "grid"}));
  gen->add_option("-o,--output-dir", gen_cmd.output_dir, "Output directory")
      ->required();
  gen->add_option("--seed", gen_cmd.seed, "Seed");
  gen->add_option("--base", gen_cmd.base_path, "Base instance for perturb");
  gen->add_option("--samples", gen_cmd.samples, "Perturbed samples");
  gen->add_option("--sigma", gen_cmd.sigma, "Relative cost deviation");
  gen->add_option("--width", gen_cmd.width, "Escape grid width");
  gen->add_option("--height", gen_cmd.height, "Escape grid height");
  gen->add_option("--pins", gen_cmd.pins, "Escape pins");
  gen->add_option("--obstacle-rate", gen_cmd.obstacle_rate, "Obstacle rate");
  gen->add_option("--pitch", gen_cmd.pitch, "Grid step cost");
  gen->add_option("--rows", gen_cmd.rows, "Road grid rows");
  gen->add_option("--cols", gen_cmd.cols, "Road grid columns");
  gen->add_option("--max-nodes", gen_cmd.max_nodes, "Random instance size");

  try {
    app.parse(argc, argv);
    if (sweep->parsed() && config_path) {
      std::ifstream in(*config_path);
      if (!in) {
        std::cerr << "error: cannot open '" << *config_path << "'\n";
        return mcfpred::kExitInput;
      }
      for (const auto& [key, value] : mcfpred::parse_key_value(in)) {
        if (key == "levels" && levels_arg.empty()) {
          levels_arg = value;
        } else if (key == "seeds" && sweep->count("--seeds") == 0) {
          sweep_cfg.seeds = std::stoi(value);
        } else if (key == "solvers" && sweep->count("--solvers") == 0) {
          solvers_arg = value;
        } else if (key == "seed" && sweep->count("--seed") == 0) {
          seed = std::stoull(value);
        } else {
          throw CLI::ValidationError("--config", "unknown key " + key);
        }
      }
    }
    if (!levels_arg.empty()) {
      sweep_cfg.levels.clear();
      for (const std::string& s : split_list(levels_arg)) {
        sweep_cfg.levels.push_back(std::stod(s));
      }
    }
    sweep_cfg.solvers = to_solvers(split_list(solvers_arg));
    bench_cfg.solvers = to_solvers(split_list(bench_solvers));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mcfpred::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mcfpred::kExitUsage;
  }

  mcfpred::SolveCommand cmd{instance, prediction, to_options(flags), verify};
  if (solve->parsed()) return mcfpred::cmd_solve(cmd, std::cout, std::cerr);
  if (verify_cmd->parsed())
    return mcfpred::cmd_verify(cmd, std::cout, std::cerr);
  if (sweep->parsed()) {
    sweep_cfg.first_seed = seed;
    sweep_cfg.options = to_options(flags);
    return mcfpred::cmd_sweep(instance, sweep_cfg, csv, std::cout, std::cerr);
  }
  if (bench->parsed()) {
    bench_cfg.prediction_path = prediction;
    bench_cfg.options = to_options(flags);
    return mcfpred::cmd_bench(instances, bench_cfg, csv, std::cout, std::cerr);
  }
  if (learn->parsed()) {
    return mcfpred::cmd_learn(instances, output, std::cout, std::cerr);
  }
  return mcfpred::cmd_gen(gen_cmd, std::cout, std::cerr);
}
