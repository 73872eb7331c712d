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

#include <autoscale/experiment.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace autoscale {
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void record_interval(RunLog& log, const EnvironmentState& env, const SimulationSetup& setup,
                     const std::vector<std::string>& managed, const Simulator& sim) {
  for (const auto& o : setup.objectives) {
    auto it = env.observed.find(o.id);
    if (it == env.observed.end()) continue;
    log.objectives.push_back({env.interval_index, o.id, o.owner, it->second, o.threshold, o.direction});
  }
  for (const auto& id : managed) {
    log.provisions.push_back({env.interval_index, id, sim.primitive(id).kind,
                              static_cast<double>(env.configuration.at(id)), env.demands.at(id)});
  }
}

}  // namespace

ExperimentPlan ExperimentPlan::from_scenario(Scenario scenario) {
  ExperimentPlan plan;
  plan.name = scenario.name;
  plan.deciders.moaco = scenario.moaco;
  plan.deciders.moga = scenario.moga;
  plan.deciders.time_budget = scenario.moaco.time_budget;
  plan.scenario = std::move(scenario);
  return plan;
}

void ExperimentPlan::validate() const {
  if (name.empty()) throw ContractViolation("plan: name is empty");
  if (intervals < 2) throw ContractViolation("plan: need at least 2 intervals");
  if (warmup >= intervals) throw ContractViolation("plan: warm-up must be shorter than the run");
  if (runs == 0) throw ContractViolation("plan: runs must be >= 1");
  if (approaches.empty()) throw ContractViolation("plan: no approaches selected");
  std::set<Approach> seen(approaches.begin(), approaches.end());
  if (seen.size() != approaches.size()) throw ContractViolation("plan: approach listed twice");
  if (!(deciders.time_budget > 0.0)) throw ContractViolation("plan: time budget must be positive");
  deciders.moaco.validate();
  deciders.moga.validate();
}

RunLog run_once(const ExperimentPlan& plan, const Trace& trace, Approach approach, std::size_t run) {
  const auto tag = static_cast<std::uint64_t>(approach);
  // The environment stream ignores the approach so every approach sees the
  // same measurement noise.
  Simulator sim(simulation_setup(plan.scenario), trace, derive_rng({plan.seed, run, 1}));
  Rng rng = derive_rng({plan.seed, tag, run, 2});

  std::vector<std::string> managed;
  {
    std::set<std::string> seen;
    for (std::size_t r = 0; r < sim.num_regions(); ++r) {
      for (const auto& p : sim.region(r).primitives) {
        if (seen.insert(p.id).second) managed.push_back(p.id);
      }
    }
  }

  RunLog log;
  log.approach = to_string(approach);
  record_interval(log, sim.state(), sim.setup(), managed, sim);

  for (std::size_t t = 1; t < plan.intervals; ++t) {
    std::optional<std::map<std::string, Value>> decision;
    double seconds = 0.0;
    const EnvironmentState& env = sim.state();
    for (std::size_t r = 0; r < sim.num_regions(); ++r) {
      const Region region = sim.region(r);
      const Trigger trigger = detect_trigger(env, region);
      if (trigger == Trigger::None) continue;
      const ClusterModel cluster = sim.cluster_model();
      const auto start = std::chrono::steady_clock::now();
      const Decision d = decide(approach, {env, region, sim.topology(), cluster, trigger}, plan.deciders, rng);
      seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const auto broken = validate_decision(region, d);
      if (!broken.empty()) throw ContractViolation(std::string(to_string(approach)) + ": " + broken[0].message);
      if (!decision) decision.emplace();
      for (const auto& [id, v] : d.assignments(region)) (*decision)[id] = v;
    }
    if (decision) log.latencies.push_back({env.interval_index, seconds});
    sim.step(decision);
    record_interval(log, sim.state(), sim.setup(), managed, sim);
  }
  return log;
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("AUTOSCALE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const auto violations = validate_scenario(plan.scenario);
  if (!violations.empty()) {
    std::string report = "scenario " + plan.scenario.name + " is invalid:";
    for (const auto& v : violations) report += "\n  " + v.path + ": " + v.message;
    throw ConfigError(report);
  }
  const Trace trace = scenario_trace(plan.scenario, plan.trace_path);
  if (trace.length() < plan.intervals) {
    throw ConfigError("trace has " + std::to_string(trace.length()) + " intervals, plan needs " +
                      std::to_string(plan.intervals));
  }

  ExperimentResult result;
  for (Approach a : plan.approaches) result.logs.push_back({a, std::vector<RunLog>(plan.runs)});

  const std::size_t jobs = plan.approaches.size() * plan.runs;
  const std::size_t workers = std::min(jobs, plan.threads ? plan.threads : worker_threads());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t a = j / plan.runs;
      const std::size_t r = j % plan.runs;
      try {
        result.logs[a].runs[r] = run_once(plan, trace, plan.approaches[a], r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  result.summary = summarize(result.logs, plan.warmup);
  if (!plan.out_dir.empty()) write_results((fs::path(plan.out_dir) / plan.name).string(), result.logs, result.summary);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<ApproachRuns>& logs, std::size_t warmup) {
  std::vector<SummaryRow> rows;
  std::vector<ObjectiveAverages> averages;
  for (const auto& ar : logs) {
    if (ar.runs.empty()) throw ContractViolation("summarize: approach without runs");
    const std::string name = to_string(ar.approach);
    std::vector<RunLog> windows;
    for (const auto& run : ar.runs) windows.push_back(run.window(warmup));
    const ObjectiveAverages avg = average_objectives(windows);
    averages.push_back(avg);

    for (std::size_t o = 0; o < avg.ids.size(); ++o) rows.push_back({name, "mean", avg.ids[o], avg.means[o]});

    std::map<std::string, std::string> owner_of;
    for (const auto& r : windows[0].objectives) owner_of.emplace(r.objective, r.owner);
    std::vector<double> per_objective;
    std::map<std::string, std::vector<double>> per_service;
    for (const auto& id : avg.ids) {
      std::vector<double> per_run;
      for (const auto& w : windows) per_run.push_back(violation_pct(w, id));
      const double v = mean(per_run);
      per_objective.push_back(v);
      per_service[owner_of[id]].push_back(v);
      rows.push_back({name, "violation_pct", id, v});
    }
    rows.push_back({name, "violation_pct", "all", mean(per_objective)});
    std::vector<double> service_means;
    for (const auto& [_, v] : per_service) service_means.push_back(mean(v));
    rows.push_back({name, "violation_std", "services", standard_deviation(service_means)});

    for (ProvisionMode mode : {ProvisionMode::Over, ProvisionMode::Under}) {
      const std::string metric = mode == ProvisionMode::Over ? "over_provisioning" : "under_provisioning";
      for (std::optional<ResourceKind> kind : {std::optional<ResourceKind>(ResourceKind::Cpu),
                                               std::optional<ResourceKind>(ResourceKind::Memory),
                                               std::optional<ResourceKind>(ResourceKind::Thread),
                                               std::optional<ResourceKind>()}) {
        std::vector<double> per_run;
        for (const auto& w : windows) per_run.push_back(provisioning_pct(w, mode, kind));
        rows.push_back({name, metric, kind ? to_string(*kind) : "all", mean(per_run)});
      }
    }
  }

  // Cross-approach metrics, grouped after each approach's own rows.
  std::vector<SummaryRow> out;
  std::size_t cursor = 0;
  for (std::size_t a = 0; a < logs.size(); ++a) {
    const std::string name = to_string(logs[a].approach);
    while (cursor < rows.size() && rows[cursor].approach == name) out.push_back(rows[cursor++]);
    if (logs.size() >= 2) {
      out.push_back({name, "g_distance", "all", g_distance(averages, a)});
      for (std::size_t b = 0; b < logs.size(); ++b) {
        if (b != a) out.push_back({name, "c_metric", to_string(logs[b].approach), c_metric(averages[a], averages[b])});
      }
    }
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "approach,metric,target,value\n";
  for (const auto& r : rows) out << r.approach << ',' << r.metric << ',' << r.target << ',' << fmt(r.value) << '\n';
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "approach,metric,target,value") {
    throw ConfigError("summary: missing header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    SummaryRow r;
    std::string value;
    if (!std::getline(cells, r.approach, ',') || !std::getline(cells, r.metric, ',') ||
        !std::getline(cells, r.target, ',') || !std::getline(cells, value)) {
      throw ConfigError("summary: malformed line '" + line + "'");
    }
    r.value = std::strtod(value.c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_overhead_csv(std::ostream& out, const std::vector<ApproachRuns>& logs) {
  out << "approach,run,decisions,min_seconds,max_seconds\n";
  for (const auto& ar : logs) {
    for (std::size_t r = 0; r < ar.runs.size(); ++r) {
      const auto& log = ar.runs[r];
      out << to_string(ar.approach) << ',' << r << ',' << log.latencies.size() << ',';
      if (log.latencies.empty()) {
        out << ",\n";
      } else {
        const auto [lo, hi] = overhead(log);
        out << fmt(lo) << ',' << fmt(hi) << '\n';
      }
    }
  }
}

void write_results(const std::string& plan_dir, const std::vector<ApproachRuns>& logs,
                   const std::vector<SummaryRow>& summary) {
  auto open = [](const fs::path& p) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write " + p.string());
    return out;
  };
  for (const auto& ar : logs) {
    for (std::size_t r = 0; r < ar.runs.size(); ++r) {
      auto out = open(fs::path(plan_dir) / to_string(ar.approach) / std::to_string(r) / "intervals.csv");
      ar.runs[r].write_csv(out);
    }
  }
  {
    auto out = open(fs::path(plan_dir) / "summary.csv");
    write_summary_csv(out, summary);
  }
  auto out = open(fs::path(plan_dir) / "overhead.csv");
  write_overhead_csv(out, logs);
}

std::vector<ApproachRuns> read_results(const std::string& plan_dir) {
  std::vector<ApproachRuns> logs;
  for (Approach a : kAllApproaches) {
    const fs::path dir = fs::path(plan_dir) / to_string(a);
    if (!fs::is_directory(dir)) continue;
    std::vector<std::size_t> runs;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string n = entry.path().filename().string();
      if (entry.is_directory() && !n.empty() && std::all_of(n.begin(), n.end(), ::isdigit)) {
        runs.push_back(std::stoul(n));
      }
    }
    std::sort(runs.begin(), runs.end());
    ApproachRuns ar{a, {}};
    for (std::size_t r : runs) {
      const fs::path p = dir / std::to_string(r) / "intervals.csv";
      std::ifstream in(p);
      if (!in) throw ConfigError("cannot read " + p.string());
      ar.runs.push_back(RunLog::read_csv(in, to_string(a)));
    }
    if (!ar.runs.empty()) logs.push_back(std::move(ar));
  }
  if (logs.empty()) throw ConfigError("no run logs under " + plan_dir);
  return logs;
}

}  // namespace autoscale
