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

#include <autoscale/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace autoscale {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ConfigError("run log: bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Direction direction_from(const std::string& s) {
  if (s == to_string(Direction::Minimize)) return Direction::Minimize;
  if (s == to_string(Direction::Maximize)) return Direction::Maximize;
  throw ConfigError("run log: bad direction '" + s + "'");
}

ResourceKind kind_from(const std::string& s) {
  if (auto k = parse_resource_kind(s)) return *k;
  throw ConfigError("run log: bad resource kind '" + s + "'");
}

constexpr const char* kHeader = "interval,record,id,group,value,reference,direction";

}  // namespace

RunLog RunLog::window(std::size_t first_interval) const {
  RunLog out;
  out.approach = approach;
  for (const auto& r : objectives) {
    if (r.interval >= first_interval) out.objectives.push_back(r);
  }
  for (const auto& r : provisions) {
    if (r.interval >= first_interval) out.provisions.push_back(r);
  }
  for (const auto& r : latencies) {
    if (r.interval >= first_interval) out.latencies.push_back(r);
  }
  return out;
}

std::size_t RunLog::num_intervals() const {
  std::set<std::size_t> seen;
  for (const auto& r : objectives) seen.insert(r.interval);
  return seen.size();
}

std::vector<std::string> RunLog::objective_ids() const {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& r : objectives) {
    if (seen.insert(r.objective).second) ids.push_back(r.objective);
  }
  return ids;
}

void RunLog::write_csv(std::ostream& out) const {
  out << kHeader << '\n';
  for (const auto& r : objectives) {
    out << r.interval << ",objective," << r.objective << ',' << r.owner << ',' << fmt(r.value) << ','
        << fmt(r.threshold) << ',' << to_string(r.direction) << '\n';
  }
  for (const auto& r : provisions) {
    out << r.interval << ",provision," << r.primitive << ',' << to_string(r.kind) << ',' << fmt(r.provision) << ','
        << fmt(r.demand) << ",\n";
  }
  for (const auto& r : latencies) out << r.interval << ",latency,decision,," << fmt(r.seconds) << ",,\n";
}

RunLog RunLog::read_csv(std::istream& in, std::string approach) {
  RunLog log;
  log.approach = std::move(approach);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw ConfigError("run log: missing header");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 7) throw ConfigError("run log line " + std::to_string(lineno) + ": expected 7 fields");
    const auto interval = static_cast<std::size_t>(parse_double(cells[0]));
    if (cells[1] == "objective") {
      log.objectives.push_back({interval, cells[2], cells[3], parse_double(cells[4]), parse_double(cells[5]),
                                direction_from(cells[6])});
    } else if (cells[1] == "provision") {
      log.provisions.push_back(
          {interval, cells[2], kind_from(cells[3]), parse_double(cells[4]), parse_double(cells[5])});
    } else if (cells[1] == "latency") {
      log.latencies.push_back({interval, parse_double(cells[4])});
    } else {
      throw ConfigError("run log line " + std::to_string(lineno) + ": unknown record '" + cells[1] + "'");
    }
  }
  return log;
}

ObjectiveAverages average_objectives(std::span<const RunLog> runs) {
  ObjectiveAverages avg;
  if (runs.empty()) return avg;
  avg.ids = runs[0].objective_ids();
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < avg.ids.size(); ++i) slot[avg.ids[i]] = i;
  avg.directions.assign(avg.ids.size(), Direction::Minimize);
  avg.means.assign(avg.ids.size(), 0.0);
  for (const auto& run : runs) {
    std::vector<double> sum(avg.ids.size(), 0.0);
    std::vector<std::size_t> count(avg.ids.size(), 0);
    for (const auto& r : run.objectives) {
      auto it = slot.find(r.objective);
      if (it == slot.end()) throw ContractViolation("runs disagree on objective set: " + r.objective);
      sum[it->second] += r.value;
      ++count[it->second];
      avg.directions[it->second] = r.direction;
    }
    for (std::size_t i = 0; i < sum.size(); ++i) {
      if (count[i] == 0) throw ContractViolation("runs disagree on objective set: " + avg.ids[i]);
      avg.means[i] += sum[i] / static_cast<double>(count[i]) / static_cast<double>(runs.size());
    }
  }
  return avg;
}

double c_metric(const ObjectiveAverages& a, const ObjectiveAverages& b) {
  if (a.ids != b.ids || a.ids.empty()) throw ContractViolation("c_metric: objective sets differ");
  std::size_t covered = 0;
  for (std::size_t o = 0; o < a.ids.size(); ++o) {
    if (!better(b.means[o], a.means[o], a.directions[o])) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(a.ids.size());
}

double c_metric(const RunLog& a, const RunLog& b) {
  if (a.num_intervals() != b.num_intervals()) throw ContractViolation("c_metric: interval counts differ");
  return c_metric(average_objectives(std::span(&a, 1)), average_objectives(std::span(&b, 1)));
}

double g_distance(std::span<const ObjectiveAverages> approaches, std::size_t target) {
  if (approaches.size() < 2) throw ContractViolation("g_distance: needs at least two approaches");
  if (target >= approaches.size()) throw ContractViolation("g_distance: target out of range");
  const auto& ids = approaches[0].ids;
  for (const auto& a : approaches) {
    if (a.ids != ids) throw ContractViolation("g_distance: objective sets differ");
  }
  double sum = 0.0;
  for (std::size_t o = 0; o < ids.size(); ++o) {
    const Direction dir = approaches[0].directions[o];
    double best = approaches[0].means[o];
    double largest = approaches[0].means[o];
    for (const auto& a : approaches) {
      if (better(a.means[o], best, dir)) best = a.means[o];
      largest = std::max(largest, a.means[o]);
    }
    if (largest == 0.0) continue;
    const double z = (approaches[target].means[o] - best) / largest;
    sum += z * z;
  }
  return std::sqrt(sum);
}

double violation_pct(const RunLog& log, const std::string& objective) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : log.objectives) {
    if (r.objective != objective) continue;
    if (r.threshold == 0.0) throw ContractViolation("violation_pct: threshold of " + objective + " is zero");
    ++n;
    if (!std::isfinite(r.threshold)) continue;
    const bool violated = r.direction == Direction::Minimize ? r.value > r.threshold : r.value < r.threshold;
    if (violated) sum += std::abs(r.value - r.threshold) / std::abs(r.threshold);
  }
  if (n == 0) throw ContractViolation("violation_pct: no records for " + objective);
  return 100.0 * sum / static_cast<double>(n);
}

double provisioning_pct(const RunLog& log, ProvisionMode mode, std::optional<ResourceKind> kind) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : log.provisions) {
    if (kind && r.kind != *kind) continue;
    if (r.demand == 0.0) continue;  // undefined ratio, skipped
    ++n;
    const bool counts = mode == ProvisionMode::Over ? r.provision > r.demand : r.provision < r.demand;
    if (counts) sum += std::abs(r.provision - r.demand) / r.demand;
  }
  if (n == 0) return 0.0;
  return 100.0 * sum / static_cast<double>(n);
}

std::pair<double, double> overhead(const RunLog& log) {
  if (log.latencies.empty()) throw ContractViolation("overhead: no decision was made");
  const auto [lo, hi] = std::minmax_element(log.latencies.begin(), log.latencies.end(),
                                            [](const auto& a, const auto& b) { return a.seconds < b.seconds; });
  return {lo->seconds, hi->seconds};
}

double standard_deviation(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

}  // namespace autoscale
