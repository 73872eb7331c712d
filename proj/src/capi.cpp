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

#include <autoscale/autoscale.h>
#include <autoscale/experiment.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

struct as_scenario {
  autoscale::Scenario scenario;
  std::vector<autoscale::Violation> violations;
};

struct as_plan {
  autoscale::ExperimentPlan plan;
};

struct as_result {
  std::vector<autoscale::SummaryRow> rows;
};

namespace {

thread_local std::string last_error;

as_status set_error(as_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps exceptions from the C++ core onto status codes.
template <typename F>
as_status guarded(F&& body) {
  try {
    body();
    return AS_OK;
  } catch (const autoscale::ConfigError& e) {
    return set_error(AS_ERR_CONFIG, e.what());
  } catch (const autoscale::ContractViolation& e) {
    return set_error(AS_ERR_CONTRACT, e.what());
  } catch (const autoscale::TraceExhausted& e) {
    return set_error(AS_ERR_CONTRACT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return set_error(AS_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(AS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(AS_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(AS_ERR_INTERNAL, "unknown error");
  }
}

#define AS_REQUIRE(cond, what) \
  if (!(cond)) return set_error(AS_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* as_version(void) { return "0.1.0"; }

const char* as_status_name(as_status status) {
  switch (status) {
    case AS_OK: return "ok";
    case AS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AS_ERR_CONFIG: return "configuration error";
    case AS_ERR_CONTRACT: return "contract violation";
    case AS_ERR_IO: return "i/o error";
    case AS_ERR_NOT_FOUND: return "not found";
    case AS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* as_last_error(void) { return last_error.c_str(); }

as_status as_scenario_load(const char* path, as_scenario** out) {
  AS_REQUIRE(path && out, "as_scenario_load: null argument");
  *out = nullptr;
  if (!std::ifstream(path)) return set_error(AS_ERR_IO, std::string("cannot open ") + path);
  return guarded([&] {
    auto h = std::make_unique<as_scenario>();
    h->scenario = autoscale::load_scenario(path);
    *out = h.release();
  });
}

as_status as_scenario_parse(const char* json_text, as_scenario** out) {
  AS_REQUIRE(json_text && out, "as_scenario_parse: null argument");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<as_scenario>();
    h->scenario = autoscale::parse_scenario(json_text);
    *out = h.release();
  });
}

void as_scenario_free(as_scenario* scenario) { delete scenario; }

as_status as_scenario_name(const as_scenario* scenario, const char** name) {
  AS_REQUIRE(scenario && name, "as_scenario_name: null argument");
  *name = scenario->scenario.name.c_str();
  return AS_OK;
}

as_status as_scenario_validate(as_scenario* scenario, size_t* violation_count) {
  AS_REQUIRE(scenario && violation_count, "as_scenario_validate: null argument");
  return guarded([&] {
    scenario->violations = autoscale::validate_scenario(scenario->scenario);
    *violation_count = scenario->violations.size();
  });
}

as_status as_scenario_violation(const as_scenario* scenario, size_t index, const char** path, const char** message) {
  AS_REQUIRE(scenario && path && message, "as_scenario_violation: null argument");
  if (index >= scenario->violations.size()) return set_error(AS_ERR_NOT_FOUND, "violation index out of range");
  *path = scenario->violations[index].path.c_str();
  *message = scenario->violations[index].message.c_str();
  return AS_OK;
}

as_status as_scenario_counts(const as_scenario* scenario, size_t* objectives, size_t* primitives, size_t* regions) {
  AS_REQUIRE(scenario, "as_scenario_counts: null scenario");
  const auto& setup = scenario->scenario.setup;
  if (objectives) *objectives = setup.objectives.size();
  if (primitives) *primitives = setup.primitives.size();
  if (regions) *regions = setup.regions.size();
  return AS_OK;
}

as_status as_plan_create(const as_scenario* scenario, as_plan** out) {
  AS_REQUIRE(scenario && out, "as_plan_create: null argument");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<as_plan>();
    h->plan = autoscale::ExperimentPlan::from_scenario(scenario->scenario);
    *out = h.release();
  });
}

void as_plan_free(as_plan* plan) { delete plan; }

as_status as_plan_set_name(as_plan* plan, const char* name) {
  AS_REQUIRE(plan && name && *name, "as_plan_set_name: empty name");
  plan->plan.name = name;
  return AS_OK;
}

as_status as_plan_set_approaches(as_plan* plan, const char* approaches) {
  AS_REQUIRE(plan && approaches, "as_plan_set_approaches: null argument");
  std::vector<autoscale::Approach> parsed;
  std::istringstream in(approaches);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = autoscale::parse_approach(item);
    if (!a) return set_error(AS_ERR_INVALID_ARGUMENT, "unknown approach '" + item + "'");
    if (std::find(parsed.begin(), parsed.end(), *a) != parsed.end()) {
      return set_error(AS_ERR_INVALID_ARGUMENT, "approach '" + item + "' listed twice");
    }
    parsed.push_back(*a);
  }
  AS_REQUIRE(!parsed.empty(), "as_plan_set_approaches: no approach given");
  plan->plan.approaches = std::move(parsed);
  return AS_OK;
}

as_status as_plan_set_intervals(as_plan* plan, size_t total, size_t warmup) {
  AS_REQUIRE(plan, "as_plan_set_intervals: null plan");
  AS_REQUIRE(total >= 2 && warmup < total, "as_plan_set_intervals: need warm-up < total and total >= 2");
  plan->plan.intervals = total;
  plan->plan.warmup = warmup;
  return AS_OK;
}

as_status as_plan_set_runs(as_plan* plan, size_t runs) {
  AS_REQUIRE(plan && runs >= 1, "as_plan_set_runs: runs must be >= 1");
  plan->plan.runs = runs;
  return AS_OK;
}

as_status as_plan_set_seed(as_plan* plan, uint64_t seed) {
  AS_REQUIRE(plan, "as_plan_set_seed: null plan");
  plan->plan.seed = seed;
  return AS_OK;
}

as_status as_plan_set_time_budget(as_plan* plan, double seconds) {
  AS_REQUIRE(plan && seconds > 0.0, "as_plan_set_time_budget: budget must be positive");
  plan->plan.deciders.time_budget = seconds;
  return AS_OK;
}

as_status as_plan_set_trace(as_plan* plan, const char* csv_path) {
  AS_REQUIRE(plan, "as_plan_set_trace: null plan");
  if (csv_path) plan->plan.trace_path = csv_path;
  else plan->plan.trace_path.reset();
  return AS_OK;
}

as_status as_plan_set_output(as_plan* plan, const char* out_dir) {
  AS_REQUIRE(plan, "as_plan_set_output: null plan");
  plan->plan.out_dir = out_dir ? out_dir : "";
  return AS_OK;
}

as_status as_plan_set_threads(as_plan* plan, size_t threads) {
  AS_REQUIRE(plan, "as_plan_set_threads: null plan");
  plan->plan.threads = threads;
  return AS_OK;
}

as_status as_plan_get_moaco(const as_plan* plan, as_moaco_params* out) {
  AS_REQUIRE(plan && out, "as_plan_get_moaco: null argument");
  const auto& m = plan->plan.deciders.moaco;
  *out = {m.alpha, m.beta, m.rho, m.v, m.max_iteration, m.max_ant, m.max_run};
  return AS_OK;
}

as_status as_plan_set_moaco(as_plan* plan, const as_moaco_params* p) {
  AS_REQUIRE(plan && p, "as_plan_set_moaco: null argument");
  autoscale::MoacoConfig m = plan->plan.deciders.moaco;
  m.alpha = p->alpha;
  m.beta = p->beta;
  m.rho = p->rho;
  m.v = p->v;
  m.max_iteration = p->max_iteration;
  m.max_ant = p->max_ant;
  m.max_run = p->max_run;
  const as_status st = guarded([&] { m.validate(); });
  if (st == AS_OK) plan->plan.deciders.moaco = m;
  return st == AS_ERR_CONTRACT ? AS_ERR_INVALID_ARGUMENT : st;
}

as_status as_plan_get_moga(const as_plan* plan, as_moga_params* out) {
  AS_REQUIRE(plan && out, "as_plan_get_moga: null argument");
  const auto& m = plan->plan.deciders.moga;
  *out = {m.population_size, m.generations, m.crossover_rate, m.mutation_rate, m.tournament_size};
  return AS_OK;
}

as_status as_plan_set_moga(as_plan* plan, const as_moga_params* p) {
  AS_REQUIRE(plan && p, "as_plan_set_moga: null argument");
  autoscale::MogaConfig m;
  m.population_size = p->population_size;
  m.generations = p->generations;
  m.crossover_rate = p->crossover_rate;
  m.mutation_rate = p->mutation_rate;
  m.tournament_size = p->tournament_size;
  const as_status st = guarded([&] { m.validate(); });
  if (st == AS_OK) plan->plan.deciders.moga = m;
  return st == AS_ERR_CONTRACT ? AS_ERR_INVALID_ARGUMENT : st;
}

as_status as_experiment_run(const as_plan* plan, as_result** out) {
  AS_REQUIRE(plan && out, "as_experiment_run: null argument");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<as_result>();
    h->rows = autoscale::run_experiment(plan->plan).summary;
    *out = h.release();
  });
}

as_status as_summarize_dir(const char* plan_dir, size_t warmup, as_result** out) {
  AS_REQUIRE(plan_dir && out, "as_summarize_dir: null argument");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<as_result>();
    h->rows = autoscale::summarize(autoscale::read_results(plan_dir), warmup);
    *out = h.release();
  });
}

void as_result_free(as_result* result) { delete result; }

size_t as_result_row_count(const as_result* result) { return result ? result->rows.size() : 0; }

as_status as_result_row(const as_result* result, size_t index, const char** approach, const char** metric,
                        const char** target, double* value) {
  AS_REQUIRE(result, "as_result_row: null result");
  if (index >= result->rows.size()) return set_error(AS_ERR_NOT_FOUND, "row index out of range");
  const auto& r = result->rows[index];
  if (approach) *approach = r.approach.c_str();
  if (metric) *metric = r.metric.c_str();
  if (target) *target = r.target.c_str();
  if (value) *value = r.value;
  return AS_OK;
}

as_status as_result_value(const as_result* result, const char* approach, const char* metric, const char* target,
                          double* value) {
  AS_REQUIRE(result && approach && metric && target && value, "as_result_value: null argument");
  for (const auto& r : result->rows) {
    if (r.approach == approach && r.metric == metric && r.target == target) {
      *value = r.value;
      return AS_OK;
    }
  }
  return set_error(AS_ERR_NOT_FOUND, std::string("no summary row ") + approach + "/" + metric + "/" + target);
}

as_status as_result_write_summary(const as_result* result, const char* path) {
  AS_REQUIRE(result && path, "as_result_write_summary: null argument");
  std::ofstream out(path);
  if (!out) return set_error(AS_ERR_IO, std::string("cannot write ") + path);
  autoscale::write_summary_csv(out, result->rows);
  return out ? AS_OK : set_error(AS_ERR_IO, std::string("write failed: ") + path);
}

void as_trace_params_default(as_trace_params* out) {
  if (!out) return;
  const autoscale::TraceGeneratorParams d;
  *out = {d.intervals, d.peak, d.base_fraction, d.plateau_fraction, d.tail_fraction, d.noise, d.seed};
}

as_status as_trace_generate(const as_scenario* scenario, const as_trace_params* params, const char* out_path) {
  AS_REQUIRE(scenario && out_path, "as_trace_generate: null argument");
  return guarded([&] {
    const auto& sc = scenario->scenario;
    autoscale::TraceGeneratorParams g = sc.trace.generator.value_or(autoscale::TraceGeneratorParams{});
    if (params) {
      g.intervals = params->intervals;
      g.peak = params->peak;
      g.base_fraction = params->base_fraction;
      g.plateau_fraction = params->plateau_fraction;
      g.tail_fraction = params->tail_fraction;
      g.noise = params->noise;
      g.seed = params->seed;
    }
    if (g.service_scale.empty()) {
      for (const auto& s : autoscale::scenario_services(sc)) g.service_scale[s] = 1.0;
    }
    autoscale::generate_trace(g).write_csv_file(out_path);
  });
}

as_status as_decide_once(const as_scenario* scenario, const char* approach, size_t interval, uint64_t seed,
                         double time_budget, char** decision_json) {
  AS_REQUIRE(scenario && approach && decision_json, "as_decide_once: null argument");
  AS_REQUIRE(time_budget > 0.0, "as_decide_once: budget must be positive");
  const auto which = autoscale::parse_approach(approach);
  if (!which) return set_error(AS_ERR_INVALID_ARGUMENT, std::string("unknown approach '") + approach + "'");
  *decision_json = nullptr;
  return guarded([&] {
    const auto& sc = scenario->scenario;
    const auto violations = autoscale::validate_scenario(sc);
    if (!violations.empty()) {
      throw autoscale::ConfigError("scenario is invalid: " + violations[0].path + ": " + violations[0].message);
    }
    autoscale::Simulator sim(autoscale::simulation_setup(sc), autoscale::scenario_trace(sc),
                             autoscale::derive_rng({seed, 1}));
    for (size_t t = 0; t < interval; ++t) sim.step(std::nullopt);

    autoscale::DeciderConfig cfg{sc.moaco, sc.moga, time_budget};
    autoscale::Rng rng = autoscale::derive_rng({seed, 2});
    nlohmann::json out = nlohmann::json::object();
    for (size_t r = 0; r < sim.num_regions(); ++r) {
      const autoscale::Region region = sim.region(r);
      const auto trigger = autoscale::detect_trigger(sim.state(), region);
      if (trigger == autoscale::Trigger::None) continue;
      const autoscale::ClusterModel cluster = sim.cluster_model();
      const auto d = autoscale::decide(*which, {sim.state(), region, sim.topology(), cluster, trigger}, cfg, rng);
      for (const auto& [id, v] : d.assignments(region)) out[id] = v;
    }
    const std::string text = out.dump();
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *decision_json = buf;
  });
}

void as_string_free(char* s) { std::free(s); }

}  // extern "C"
