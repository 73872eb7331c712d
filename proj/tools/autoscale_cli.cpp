// Copyright 2026 The autoscale Authors
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

// Command-line front end. Talks to the engine only through autoscale.h.

#include <autoscale/autoscale.h>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitError = 2;

int report(as_status st, const char* what) {
  std::cerr << "autoscale: " << what << ": " << as_status_name(st) << ": " << as_last_error() << '\n';
  return st == AS_ERR_CONFIG ? kExitInvalid : kExitError;
}

struct ScenarioHandle {
  as_scenario* h = nullptr;
  ~ScenarioHandle() { as_scenario_free(h); }
};

// Prints the validation report; true when the scenario is usable.
bool check_scenario(as_scenario* sc) {
  size_t n = 0;
  if (as_status st = as_scenario_validate(sc, &n); st != AS_OK) {
    report(st, "validate");
    return false;
  }
  for (size_t i = 0; i < n; ++i) {
    const char* path = nullptr;
    const char* message = nullptr;
    as_scenario_violation(sc, i, &path, &message);
    std::cerr << "invalid: " << path << ": " << message << '\n';
  }
  return n == 0;
}

struct RunOptions {
  std::string scenario;
  std::optional<std::string> trace;
  std::string approaches = "moaco-cd,moga,rule,hill,random";
  size_t intervals = 70;
  size_t warmup = 20;
  size_t runs = 10;
  uint64_t seed = 1;
  std::optional<double> time_budget;
  std::string out = "results";
  std::optional<std::string> name;
  size_t threads = 0;
  std::optional<double> alpha, beta, rho, v;
  std::optional<size_t> max_iteration, max_ant, max_run;
  std::optional<size_t> population, generations;
  std::optional<double> crossover, mutation;
};

int cmd_run(const RunOptions& o) {
  ScenarioHandle sc;
  if (as_status st = as_scenario_load(o.scenario.c_str(), &sc.h); st != AS_OK) return report(st, "load scenario");
  if (!check_scenario(sc.h)) return kExitInvalid;

  as_plan* plan = nullptr;
  if (as_status st = as_plan_create(sc.h, &plan); st != AS_OK) return report(st, "plan");
  struct PlanGuard {
    as_plan* p;
    ~PlanGuard() { as_plan_free(p); }
  } guard{plan};

  as_moaco_params mp;
  as_plan_get_moaco(plan, &mp);
  if (o.alpha) mp.alpha = *o.alpha;
  if (o.beta) mp.beta = *o.beta;
  if (o.rho) mp.rho = *o.rho;
  if (o.v) mp.v = *o.v;
  if (o.max_iteration) mp.max_iteration = *o.max_iteration;
  if (o.max_ant) mp.max_ant = *o.max_ant;
  if (o.max_run) mp.max_run = *o.max_run;
  as_moga_params gp;
  as_plan_get_moga(plan, &gp);
  if (o.population) gp.population_size = *o.population;
  if (o.generations) gp.generations = *o.generations;
  if (o.crossover) gp.crossover_rate = *o.crossover;
  if (o.mutation) gp.mutation_rate = *o.mutation;

  as_status st = as_plan_set_moaco(plan, &mp);
  if (st == AS_OK) st = as_plan_set_moga(plan, &gp);
  if (st == AS_OK) st = as_plan_set_approaches(plan, o.approaches.c_str());
  if (st == AS_OK) st = as_plan_set_intervals(plan, o.intervals, o.warmup);
  if (st == AS_OK) st = as_plan_set_runs(plan, o.runs);
  if (st == AS_OK) st = as_plan_set_seed(plan, o.seed);
  if (st == AS_OK && o.time_budget) st = as_plan_set_time_budget(plan, *o.time_budget);
  if (st == AS_OK && o.trace) st = as_plan_set_trace(plan, o.trace->c_str());
  if (st == AS_OK && o.name) st = as_plan_set_name(plan, o.name->c_str());
  if (st == AS_OK) st = as_plan_set_output(plan, o.out.c_str());
  if (st == AS_OK) st = as_plan_set_threads(plan, o.threads);
  if (st != AS_OK) return report(st, "plan");

  as_result* result = nullptr;
  if (st = as_experiment_run(plan, &result); st != AS_OK) return report(st, "run");
  const char* name = nullptr;
  as_scenario_name(sc.h, &name);
  std::cout << "results written to " << o.out << '/' << (o.name ? *o.name : std::string(name)) << "\n";
  std::printf("%-10s %12s %14s\n", "approach", "g_distance", "violation_pct");
  const size_t rows = as_result_row_count(result);
  for (size_t i = 0; i < rows; ++i) {
    const char *approach, *metric, *target;
    double value;
    as_result_row(result, i, &approach, &metric, &target, &value);
    if (std::string(metric) != "violation_pct" || std::string(target) != "all") continue;
    double g = 0.0;
    const bool has_g = as_result_value(result, approach, "g_distance", "all", &g) == AS_OK;
    if (has_g) std::printf("%-10s %12.4f %14.2f\n", approach, g, value);
    else std::printf("%-10s %12s %14.2f\n", approach, "-", value);
  }
  as_result_free(result);
  return 0;
}

int cmd_validate(const std::string& path) {
  ScenarioHandle sc;
  if (as_status st = as_scenario_load(path.c_str(), &sc.h); st != AS_OK) return report(st, "load scenario");
  if (!check_scenario(sc.h)) return kExitInvalid;
  size_t objectives = 0, primitives = 0, regions = 0;
  as_scenario_counts(sc.h, &objectives, &primitives, &regions);
  std::cout << "ok: " << objectives << " objectives, " << primitives << " primitives, " << regions << " regions\n";
  return 0;
}

int cmd_generate(const std::string& scenario, const std::string& out, std::optional<size_t> intervals,
                 std::optional<double> peak, std::optional<double> noise, std::optional<uint64_t> seed) {
  ScenarioHandle sc;
  if (as_status st = as_scenario_load(scenario.c_str(), &sc.h); st != AS_OK) return report(st, "load scenario");
  as_trace_params p;
  as_trace_params_default(&p);
  const bool custom = intervals || peak || noise || seed;
  if (intervals) p.intervals = *intervals;
  if (peak) p.peak = *peak;
  if (noise) p.noise = *noise;
  if (seed) p.seed = *seed;
  if (as_status st = as_trace_generate(sc.h, custom ? &p : nullptr, out.c_str()); st != AS_OK) {
    return report(st, "generate-trace");
  }
  std::cout << "trace written to " << out << '\n';
  return 0;
}

int cmd_summarize(const std::string& dir, size_t warmup, const std::optional<std::string>& out) {
  as_result* result = nullptr;
  if (as_status st = as_summarize_dir(dir.c_str(), warmup, &result); st != AS_OK) return report(st, "summarize");
  int code = 0;
  if (out) {
    if (as_status st = as_result_write_summary(result, out->c_str()); st != AS_OK) code = report(st, "summarize");
  } else {
    std::cout << "approach,metric,target,value\n";
    for (size_t i = 0; i < as_result_row_count(result); ++i) {
      const char *approach, *metric, *target;
      double value;
      as_result_row(result, i, &approach, &metric, &target, &value);
      std::printf("%s,%s,%s,%.17g\n", approach, metric, target, value);
    }
  }
  as_result_free(result);
  return code;
}

int cmd_decide(const std::string& scenario, const std::string& approach, size_t interval, uint64_t seed,
               double budget) {
  ScenarioHandle sc;
  if (as_status st = as_scenario_load(scenario.c_str(), &sc.h); st != AS_OK) return report(st, "load scenario");
  char* json = nullptr;
  if (as_status st = as_decide_once(sc.h, approach.c_str(), interval, seed, budget, &json); st != AS_OK) {
    return report(st, "decide");
  }
  std::cout << json << '\n';
  as_string_free(json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective autoscaling decision engine and simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", as_version());

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV results");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--trace", run.trace, "Workload trace CSV (overrides the scenario)");
  run_cmd->add_option("--approaches", run.approaches, "Comma-separated approaches")->capture_default_str();
  run_cmd->add_option("--intervals", run.intervals, "Total intervals")->capture_default_str();
  run_cmd->add_option("--warmup", run.warmup, "Warm-up intervals excluded from metrics")->capture_default_str();
  run_cmd->add_option("--runs", run.runs, "Repetitions per approach")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Experiment seed")->capture_default_str();
  run_cmd->add_option("--time-budget", run.time_budget, "Seconds per decision (default: scenario, 75)");
  run_cmd->add_option("--out", run.out, "Results root")->capture_default_str();
  run_cmd->add_option("--name", run.name, "Plan name (default: scenario name)");
  run_cmd->add_option("--threads", run.threads, "Workers (default: AUTOSCALE_THREADS or all cores)");
  run_cmd->add_option("--alpha", run.alpha, "MOACO pheromone exponent");
  run_cmd->add_option("--beta", run.beta, "MOACO heuristic exponent");
  run_cmd->add_option("--rho", run.rho, "MOACO evaporation rate");
  run_cmd->add_option("--v", run.v, "MOACO tau_min / tau_max ratio");
  run_cmd->add_option("--max-iteration", run.max_iteration, "MOACO iterations");
  run_cmd->add_option("--max-ant", run.max_ant, "MOACO ants per iteration");
  run_cmd->add_option("--max-run", run.max_run, "MOACO retries per ant");
  run_cmd->add_option("--population", run.population, "MOGA population size");
  run_cmd->add_option("--generations", run.generations, "MOGA generations");
  run_cmd->add_option("--crossover", run.crossover, "MOGA crossover rate");
  run_cmd->add_option("--mutation", run.mutation, "MOGA per-gene mutation rate");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario and list every problem");
  validate_cmd->add_option("--scenario", validate_path, "Scenario JSON")->required()->check(CLI::ExistingFile);

  std::string gen_scenario, gen_out;
  std::optional<size_t> gen_intervals;
  std::optional<double> gen_peak, gen_noise;
  std::optional<uint64_t> gen_seed;
  auto* gen_cmd = app.add_subcommand("generate-trace", "Write a synthetic workload trace for a scenario");
  gen_cmd->add_option("--scenario", gen_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", gen_out, "Output CSV")->required();
  gen_cmd->add_option("--intervals", gen_intervals, "Number of intervals");
  gen_cmd->add_option("--peak", gen_peak, "Peak request rate (req/min)");
  gen_cmd->add_option("--noise", gen_noise, "Relative jitter");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");

  std::string sum_dir;
  size_t sum_warmup = 20;
  std::optional<std::string> sum_out;
  auto* sum_cmd = app.add_subcommand("summarize", "Recompute summary metrics from written run logs");
  sum_cmd->add_option("--dir", sum_dir, "results/<plan> directory")->required()->check(CLI::ExistingDirectory);
  sum_cmd->add_option("--warmup", sum_warmup, "Warm-up intervals excluded")->capture_default_str();
  sum_cmd->add_option("--out", sum_out, "Write the summary CSV here instead of stdout");

  std::string dec_scenario, dec_approach = "moaco-cd";
  size_t dec_interval = 0;
  uint64_t dec_seed = 1;
  double dec_budget = 75.0;
  auto* dec_cmd = app.add_subcommand("decide", "Simulate without acting, then print one decision as JSON");
  dec_cmd->add_option("--scenario", dec_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  dec_cmd->add_option("--approach", dec_approach, "Decider")->capture_default_str();
  dec_cmd->add_option("--interval", dec_interval, "Interval to decide at")->capture_default_str();
  dec_cmd->add_option("--seed", dec_seed, "Seed")->capture_default_str();
  dec_cmd->add_option("--time-budget", dec_budget, "Seconds")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return cmd_run(run);
  if (*validate_cmd) return cmd_validate(validate_path);
  if (*gen_cmd) return cmd_generate(gen_scenario, gen_out, gen_intervals, gen_peak, gen_noise, gen_seed);
  if (*sum_cmd) return cmd_summarize(sum_dir, sum_warmup, sum_out);
  if (*dec_cmd) return cmd_decide(dec_scenario, dec_approach, dec_interval, dec_seed, dec_budget);
  return kExitError;
}
