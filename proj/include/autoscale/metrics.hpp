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

#ifndef AUTOSCALE_METRICS_HPP
#define AUTOSCALE_METRICS_HPP

#include <autoscale/domain.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace autoscale {

struct ObjectiveRecord {
  std::size_t interval = 0;
  std::string objective;
  std::string owner;
  double value = 0.0;
  double threshold = 0.0;
  Direction direction = Direction::Minimize;
};

struct ProvisionRecord {
  std::size_t interval = 0;
  std::string primitive;
  ResourceKind kind = ResourceKind::Cpu;
  double provision = 0.0;
  double demand = 0.0;
};

struct LatencyRecord {
  std::size_t interval = 0;
  double seconds = 0.0;
};

/// Everything one approach produced during one run. On disk this is a
/// single `intervals.csv` with columns
/// `interval,record,id,group,value,reference,direction`.
struct RunLog {
  std::string approach;
  std::vector<ObjectiveRecord> objectives;
  std::vector<ProvisionRecord> provisions;
  std::vector<LatencyRecord> latencies;

  /// Records with interval >= first_interval.
  RunLog window(std::size_t first_interval) const;
  std::size_t num_intervals() const;
  std::vector<std::string> objective_ids() const;

  void write_csv(std::ostream& out) const;
  static RunLog read_csv(std::istream& in, std::string approach);
};

/// Interval-averaged objective results of one approach, optionally pooled
/// over several runs.
struct ObjectiveAverages {
  std::vector<std::string> ids;
  std::vector<Direction> directions;
  std::vector<double> means;
};

ObjectiveAverages average_objectives(std::span<const RunLog> runs);

/// Fraction of objectives on which `a` is better than or equal to `b`.
double c_metric(const ObjectiveAverages& a, const ObjectiveAverages& b);
double c_metric(const RunLog& a, const RunLog& b);

/// Normalized distance of approach `target` to the per-objective best
/// average over all approaches.
double g_distance(std::span<const ObjectiveAverages> approaches, std::size_t target);

/// Mean relative extent (in %) by which `objective` misses its threshold.
double violation_pct(const RunLog& log, const std::string& objective);

enum class ProvisionMode { Over, Under };

/// Mean relative gap (in %) between provision and demand, counting only
/// records on the `mode` side. Records with zero demand are skipped.
double provisioning_pct(const RunLog& log, ProvisionMode mode,
                        std::optional<ResourceKind> kind = std::nullopt);

/// (best case, worst case) decision latency in seconds. Throws
/// ContractViolation when the log holds no decision.
std::pair<double, double> overhead(const RunLog& log);

/// Population standard deviation.
double standard_deviation(std::span<const double> values);

}  // namespace autoscale

#endif  // AUTOSCALE_METRICS_HPP
