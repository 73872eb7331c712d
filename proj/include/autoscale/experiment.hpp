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

#ifndef AUTOSCALE_EXPERIMENT_HPP
#define AUTOSCALE_EXPERIMENT_HPP

#include <autoscale/deciders.hpp>
#include <autoscale/metrics.hpp>
#include <autoscale/scenario.hpp>
#include <autoscale/trace.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace autoscale {

struct ExperimentPlan {
  std::string name;  // results/<name>/...; defaults to the scenario name
  Scenario scenario;
  std::optional<std::string> trace_path;  // overrides the scenario's trace
  std::vector<Approach> approaches{kAllApproaches.begin(), kAllApproaches.end()};
  std::size_t intervals = 70;
  std::size_t warmup = 20;
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  DeciderConfig deciders;
  std::string out_dir;      // empty: keep results in memory only
  std::size_t threads = 0;  // 0: AUTOSCALE_THREADS, else hardware concurrency

  /// Plan with the scenario's algorithm settings and a 75 s budget.
  static ExperimentPlan from_scenario(Scenario scenario);
  /// Throws ContractViolation for plans that cannot run.
  void validate() const;
};

struct ApproachRuns {
  Approach approach = Approach::MoacoCd;
  std::vector<RunLog> runs;
};

struct SummaryRow {
  std::string approach;
  std::string metric;
  std::string target;
  double value = 0.0;
};

struct ExperimentResult {
  std::vector<ApproachRuns> logs;
  std::vector<SummaryRow> summary;
};

/// One simulated run of one approach. Interval 0 is logged before any
/// decision; the run ends after `plan.intervals` intervals.
RunLog run_once(const ExperimentPlan& plan, const Trace& trace, Approach approach, std::size_t run);

/// Runs every (approach, run) pair, summarizes, and writes CSVs when
/// `plan.out_dir` is set. Throws ConfigError before any run when the
/// scenario is invalid or the trace is too short.
ExperimentResult run_experiment(const ExperimentPlan& plan);

/// Metrics over intervals >= warmup.
std::vector<SummaryRow> summarize(const std::vector<ApproachRuns>& logs, std::size_t warmup);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
void write_overhead_csv(std::ostream& out, const std::vector<ApproachRuns>& logs);

/// Reads results/<plan>/<approach>/<run>/intervals.csv back.
std::vector<ApproachRuns> read_results(const std::string& plan_dir);
/// Writes intervals.csv per run plus summary.csv and overhead.csv.
void write_results(const std::string& plan_dir, const std::vector<ApproachRuns>& logs,
                   const std::vector<SummaryRow>& summary);

/// Worker count from AUTOSCALE_THREADS, else hardware concurrency (>= 1).
std::size_t worker_threads();

}  // namespace autoscale

#endif  // AUTOSCALE_EXPERIMENT_HPP
