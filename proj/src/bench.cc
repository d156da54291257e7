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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "mcfpred/analysis.h"
#include "mcfpred/eps_relaxation.h"
#include "mcfpred/generators.h"
#include "mcfpred/io.h"
#include "mcfpred/learner.h"
#include "mcfpred/scaling.h"
#include "mcfpred/ssp.h"

namespace mcfpred {
namespace {

constexpr SolverKind kAllSolvers[] = {
    SolverKind::kEpsVanilla, SolverKind::kEpsScaled, SolverKind::kEpsWarm,
    SolverKind::kEpsCold, SolverKind::kSsp};

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const IterationBudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EmptyTrainingSetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::vector<Cost> final_costs(const Instance& inst) {
  std::vector<Cost> costs;
  costs.reserve(inst.arc_count());
  for (const Arc& a : inst.arcs())
    costs.push_back((inst.node_count() + 1) * a.cost);
  return costs;
}

RunRow attempt(const Instance& inst, const SolverOptions& opts) {
  RunRow row;
  row.solver = std::string(solver_name(opts.solver));
  try {
    const SolveResult r = run_solver(inst, opts);
    row.status = "ok";
    row.cost = primal_cost(inst, r.flow);
    row.stats = r.stats;
  } catch (const InfeasibleError& e) {
    row.status = "infeasible";
    row.error = e.what();
  } catch (const IterationBudgetExceededError& e) {
    row.status = "budget";
    row.error = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

void append_stats(std::string& line, const RunRow& r) {
  const bool ok = r.status == "ok";
  const auto num = [&](std::uint64_t v) {
    return ok ? std::to_string(v) : std::string();
  };
  line += csv_field(r.solver) + ',' + r.status + ',' +
          (r.cost ? std::to_string(*r.cost) : std::string()) + ',' +
          num(r.stats.pushes) + ',' + num(r.stats.price_rises) + ',' +
          num(r.stats.node_iterations) + ',' + num(r.stats.scaling_phases) +
          ',' + (ok ? format_double(r.stats.wall_time) : std::string());
}

void print_report(std::ostream& out, SolverKind kind, const Instance& inst,
                  const SolveResult& r) {
  out << "solver " << solver_name(kind) << '\n'
      << "cost " << primal_cost(inst, r.flow) << '\n'
      << "pushes " << r.stats.pushes << '\n'
      << "price_rises " << r.stats.price_rises << '\n'
      << "node_iterations " << r.stats.node_iterations << '\n'
      << "phases " << r.stats.scaling_phases << '\n'
      << "wall_time " << format_double(r.stats.wall_time) << '\n';
}

bool print_verify(std::ostream& out, const VerifyReport& v) {
  const auto yn = [](bool b) { return b ? "yes" : "no"; };
  out << "verify feasible " << yn(v.feasible) << '\n'
      << "verify cs " << yn(v.complementary_slackness) << '\n';
  if (v.reference_cost) {
    out << "verify ssp " << *v.reference_cost
        << (*v.reference_cost == v.cost ? " agree" : " DISAGREE") << '\n';
  }
  if (v.brute_force_cost) {
    out << "verify brute_force " << *v.brute_force_cost
        << (*v.brute_force_cost == v.cost ? " agree" : " DISAGREE") << '\n';
  } else {
    out << "verify brute_force skipped\n";
  }
  return v.ok();
}

}  // namespace

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (SolverKind k : kAllSolvers) {
    if (solver_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kEpsVanilla:
      return "eps-vanilla";
    case SolverKind::kEpsScaled:
      return "eps-scaled";
    case SolverKind::kEpsWarm:
      return "eps-warm";
    case SolverKind::kEpsCold:
      return "eps-cold";
    case SolverKind::kSsp:
      return "ssp";
  }
  return "?";
}

SolveResult run_solver(const Instance& inst, const SolverOptions& opts) {
  WarmStartConfig cfg;
  if (opts.error_estimate) {
    cfg.error_estimate = engine_error_estimate(inst, *opts.error_estimate);
  }
  cfg.explicit_T = opts.explicit_T;
  cfg.base = opts.base;
  cfg.op_budget = opts.budget;
  switch (opts.solver) {
    case SolverKind::kEpsVanilla:
      if (!opts.prediction) {
        throw std::invalid_argument("eps-vanilla requires a prediction");
      }
      return solve_warm_vanilla(inst, *opts.prediction, opts.eps, opts.budget);
    case SolverKind::kEpsWarm:
      if (!opts.prediction) {
        throw std::invalid_argument("eps-warm requires a prediction");
      }
      return solve_warm_scaled(inst, *opts.prediction, cfg);
    case SolverKind::kEpsScaled:
      if (opts.prediction)
        return solve_warm_scaled(inst, *opts.prediction, cfg);
      return solve_cold(inst, cfg);
    case SolverKind::kEpsCold:
      return solve_cold(inst, cfg);
    case SolverKind::kSsp:
      return ssp_solve(inst);
  }
  throw std::invalid_argument("unknown solver");
}

bool VerifyReport::ok() const {
  return feasible && complementary_slackness &&
         (!reference_cost || *reference_cost == cost) &&
         (!brute_force_cost || *brute_force_cost == cost);
}

VerifyReport verify_solution(const Instance& inst, const SolverOptions& opts,
                             const SolveResult& result,
                             NodeIndex brute_force_max_nodes) {
  VerifyReport v;
  v.feasible = is_feasible_flow(inst, result.flow);
  v.cost = primal_cost(inst, result.flow);
  if (opts.solver == SolverKind::kSsp) {
    v.complementary_slackness = check_cs(inst, result.flow, result.dual);
  } else {
    const Cost eps = opts.solver == SolverKind::kEpsVanilla ? opts.eps : 1;
    v.complementary_slackness =
        check_eps_cs(inst, final_costs(inst), result.flow, result.dual, eps);
  }
  v.reference_cost = primal_cost(inst, ssp_solve(inst).flow);
  if (inst.node_count() <= brute_force_max_nodes) {
    try {
      v.brute_force_cost = brute_force_optimum(inst).cost;
    } catch (const InstanceTooLargeError&) {
    }
  }
  return v;
}

int cmd_solve(const SolveCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = read_dimacs_file(cmd.instance_path);
    SolverOptions opts = cmd.options;
    if (cmd.prediction_path) {
      opts.prediction =
          read_prediction_file(*cmd.prediction_path, inst.node_count());
    }
    const SolveResult r = run_solver(inst, opts);
    print_report(out, opts.solver, inst, r);
    if (cmd.verify && !print_verify(out, verify_solution(inst, opts, r))) {
      err << "verification failed\n";
      return static_cast<int>(kExitVerifyFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const SolveCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = read_dimacs_file(cmd.instance_path);
    SolverOptions opts = cmd.options;
    if (cmd.prediction_path) {
      opts.prediction =
          read_prediction_file(*cmd.prediction_path, inst.node_count());
    }
    bool all_ok = true;
    for (SolverKind k : kAllSolvers) {
      if ((k == SolverKind::kEpsWarm || k == SolverKind::kEpsVanilla) &&
          !opts.prediction) {
        continue;
      }
      opts.solver = k;
      const SolveResult r = run_solver(inst, opts);
      print_report(out, k, inst, r);
      all_ok = print_verify(out, verify_solution(inst, opts, r)) && all_ok;
    }
    if (!all_ok) {
      err << "verification failed\n";
      return static_cast<int>(kExitVerifyFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

std::vector<RunRow> run_sweep(const Instance& inst, const SweepConfig& cfg) {
  if (cfg.seeds < 1)
    throw std::invalid_argument("sweep needs at least one seed");
  if (!std::is_sorted(cfg.levels.begin(), cfg.levels.end())) {
    throw std::invalid_argument("sweep levels must be sorted ascending");
  }
  for (double e : cfg.levels) {
    if (!(e >= 0) || !std::isfinite(e)) {
      throw std::invalid_argument("sweep levels must be finite and >= 0");
    }
  }
  std::vector<double> levels = cfg.levels;
  const double full = static_cast<double>(inst.node_count() - 1) *
                      static_cast<double>(inst.max_cost());
  if (cfg.full_range && (levels.empty() || levels.back() < full)) {
    levels.push_back(full);
  }
  const DualVector exact = ssp_solve(inst).dual;
  const std::vector<double> p_star(exact.begin(), exact.end());

  std::vector<RunRow> rows;
  for (int k = 0; k < cfg.seeds; ++k) {
    SolverOptions opts = cfg.options;
    opts.solver = SolverKind::kEpsCold;
    opts.prediction.reset();
    RunRow row = attempt(inst, opts);
    row.seed = cfg.first_seed + k;
    rows.push_back(std::move(row));
  }
  for (std::size_t li = 0; li < levels.size(); ++li) {
    for (int k = 0; k < cfg.seeds; ++k) {
      const std::uint64_t seed = cfg.first_seed + k;
      const Prediction pred =
          perturb_dual(p_star, levels[li], seed * 1'000'003ULL + li);
      for (SolverKind kind : cfg.solvers) {
        if (kind == SolverKind::kEpsCold) continue;
        SolverOptions opts = cfg.options;
        opts.solver = kind;
        opts.prediction = pred;
        if (!opts.error_estimate) opts.error_estimate = levels[li];
        RunRow row = attempt(inst, opts);
        row.level = levels[li];
        row.seed = seed;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<RunRow>& rows) {
  std::string out =
      "level,seed,solver,status,cost,pushes,price_rises,node_iterations,"
      "phases,wall_time,error\n";
  for (const RunRow& r : rows) {
    std::string line = (r.level ? format_double(*r.level) : std::string()) +
                       ',' + std::to_string(r.seed) + ',';
    append_stats(line, r);
    out += line + ',' + csv_field(r.error) + '\n';
  }
  return out;
}

int cmd_sweep(const std::string& instance_path, const SweepConfig& cfg,
              const std::optional<std::string>& csv_path, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = read_dimacs_file(instance_path);
    const std::string csv = sweep_csv(run_sweep(inst, cfg));
    if (csv_path) {
      write_text_file(*csv_path, csv);
    } else {
      out << csv;
    }
    return static_cast<int>(kExitOk);
  });
}

std::vector<RunRow> run_bench(const std::vector<BenchInput>& inputs,
                              const BenchConfig& cfg) {
  std::vector<RunRow> rows;
  if (cfg.solvers.empty()) return rows;
  const bool has_warm = std::find(cfg.solvers.begin(), cfg.solvers.end(),
                                  SolverKind::kEpsWarm) != cfg.solvers.end();
  const SolverKind reference = has_warm ? SolverKind::kEpsWarm : cfg.solvers[0];
  std::vector<std::vector<double>> ratios(cfg.solvers.size());
  for (const BenchInput& in : inputs) {
    std::vector<RunRow> group;
    for (SolverKind kind : cfg.solvers) {
      SolverOptions opts = cfg.options;
      opts.solver = kind;
      opts.prediction = in.prediction;
      RunRow row = attempt(in.instance, opts);
      row.instance = in.name;
      group.push_back(std::move(row));
    }
    const auto ref =
        std::find(cfg.solvers.begin(), cfg.solvers.end(), reference) -
        cfg.solvers.begin();
    for (std::size_t s = 0; s < group.size(); ++s) {
      if (group[s].status != "ok" || group[ref].status != "ok") continue;
      const double ops = static_cast<double>(
          std::max<std::uint64_t>(group[s].stats.operations(), 1));
      const double ref_ops = static_cast<double>(
          std::max<std::uint64_t>(group[ref].stats.operations(), 1));
      group[s].op_ratio = ops / ref_ops;
      ratios[s].push_back(*group[s].op_ratio);
    }
    for (RunRow& r : group) rows.push_back(std::move(r));
  }
  if (inputs.empty()) return rows;
  for (std::size_t s = 0; s < cfg.solvers.size(); ++s) {
    RunRow avg;
    avg.instance = "avg.";
    avg.solver = std::string(solver_name(cfg.solvers[s]));
    avg.status = ratios[s].empty() ? "error" : "ok";
    if (!ratios[s].empty()) {
      double log_sum = 0;
      for (double r : ratios[s]) log_sum += std::log(r);
      avg.op_ratio = std::exp(log_sum / static_cast<double>(ratios[s].size()));
    } else {
      avg.error = "no successful paired runs";
    }
    rows.push_back(std::move(avg));
  }
  return rows;
}

std::string bench_csv(const std::vector<RunRow>& rows) {
  std::string out =
      "instance,solver,status,cost,pushes,price_rises,node_iterations,phases,"
      "wall_time,op_ratio,error\n";
  for (const RunRow& r : rows) {
    std::string line = csv_field(r.instance) + ',';
    if (r.instance == "avg.") {
      line += csv_field(r.solver) + ',' + r.status + ",,,,,,";
    } else {
      append_stats(line, r);
    }
    line += ',' + (r.op_ratio ? format_double(*r.op_ratio) : std::string());
    out += line + ',' + csv_field(r.error) + '\n';
  }
  return out;
}

int cmd_bench(const std::vector<std::string>& instance_paths,
              const BenchConfig& cfg,
              const std::optional<std::string>& csv_path, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    std::vector<BenchInput> inputs;
    for (const std::string& path : instance_paths) {
      BenchInput in{path, read_dimacs_file(path), std::nullopt};
      if (cfg.prediction_path) {
        in.prediction = read_prediction_file(*cfg.prediction_path,
                                             in.instance.node_count());
      }
      inputs.push_back(std::move(in));
    }
    const std::vector<RunRow> rows = run_bench(inputs, cfg);
    const std::string csv = bench_csv(rows);
    if (csv_path) {
      write_text_file(*csv_path, csv);
    } else {
      out << csv;
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_learn(const std::vector<std::string>& instance_paths,
              const std::string& output_path, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    std::vector<Instance> instances;
    for (const std::string& path : instance_paths) {
      instances.push_back(read_dimacs_file(path));
    }
    const LearnedPrediction learned =
        learn_fixed_prediction(gather_training_duals(instances));
    write_text_file(output_path, write_prediction(learned.prediction));
    out << "surrogate_loss " << format_double(learned.surrogate_loss) << '\n'
        << "error_estimate " << format_double(learned.error_estimate) << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_gen(const GenCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cmd.output_dir, ec);
    if (ec) throw IoError("cannot create '" + cmd.output_dir + "'");
    const auto emit = [&](const std::string& name, const std::string& text) {
      const std::string path = (fs::path(cmd.output_dir) / name).string();
      write_text_file(path, text);
      out << path << '\n';
    };
    if (cmd.mode == "perturb") {
      if (cmd.samples < 0) throw std::invalid_argument("samples must be >= 0");
      PerturbSpec spec{read_dimacs_file(cmd.base_path), cmd.sigma, cmd.seed,
                       cmd.samples};
      const std::vector<Instance> samples = perturb_costs(spec);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "sample_%03zu.min", i);
        emit(name, write_dimacs(samples[i]));
      }
    } else if (cmd.mode == "escape") {
      EscapeSpec spec;
      spec.width = cmd.width;
      spec.height = cmd.height;
      spec.random_pins = cmd.pins;
      spec.obstacle_rate = cmd.obstacle_rate;
      spec.seed = cmd.seed;
      spec.pitch = cmd.pitch;
      const EscapeInstance esc = gen_escape(spec);
      emit("escape.min", write_dimacs(esc.instance));
      emit("escape.roles", write_role_map(esc.roles));
    } else if (cmd.mode == "random") {
      RandomInstanceSpec spec;
      spec.max_nodes = cmd.max_nodes;
      spec.min_nodes = std::min(spec.min_nodes, cmd.max_nodes);
      spec.seed = cmd.seed;
      emit("random.min", write_dimacs(gen_random_instance(spec)));
    } else if (cmd.mode == "grid") {
      RoadGridSpec spec;
      spec.rows = cmd.rows;
      spec.cols = cmd.cols;
      spec.seed = cmd.seed;
      emit("grid.min", write_dimacs(gen_road_grid(spec)));
    } else {
      throw std::invalid_argument("unknown gen mode '" + cmd.mode + "'");
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace mcfpred
