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

#include <autoscale/domain.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace autoscale {

const char* to_string(Direction d) { return d == Direction::Minimize ? "minimize" : "maximize"; }

const char* to_string(PrimitiveScope s) {
  return s == PrimitiveScope::PerService ? "per-service" : "per-vm";
}

const char* to_string(ResourceKind k) {
  switch (k) {
    case ResourceKind::Cpu: return "cpu";
    case ResourceKind::Memory: return "memory";
    case ResourceKind::Thread: return "thread";
  }
  return "?";
}

const char* to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::ResponseTime: return "response_time";
    case ObjectiveKind::Throughput: return "throughput";
    case ObjectiveKind::Reliability: return "reliability";
    case ObjectiveKind::Availability: return "availability";
    case ObjectiveKind::Cost: return "cost";
    case ObjectiveKind::Custom: return "custom";
  }
  return "?";
}

std::optional<ResourceKind> parse_resource_kind(const std::string& s) {
  if (s == "cpu") return ResourceKind::Cpu;
  if (s == "memory") return ResourceKind::Memory;
  if (s == "thread") return ResourceKind::Thread;
  return std::nullopt;
}

std::optional<ObjectiveKind> parse_objective_kind(const std::string& s) {
  for (auto k : {ObjectiveKind::ResponseTime, ObjectiveKind::Throughput, ObjectiveKind::Reliability,
                 ObjectiveKind::Availability, ObjectiveKind::Cost, ObjectiveKind::Custom}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

Value ControlPrimitiveSpec::round_to_lattice(double v) const {
  const double n = std::floor((v - static_cast<double>(hard_min)) / static_cast<double>(step) + 0.5);
  return hard_min + static_cast<Value>(n) * step;
}

std::vector<Value> ControlPrimitiveSpec::enumerate_grid() const {
  std::vector<Value> grid;
  if (step <= 0 || lower_bound > upper_bound) return grid;
  grid.reserve(grid_size());
  for (Value v = lower_bound; v <= upper_bound; v += step) grid.push_back(v);
  return grid;
}

std::size_t ControlPrimitiveSpec::grid_size() const {
  if (step <= 0 || lower_bound > upper_bound) return 0;
  return static_cast<std::size_t>((upper_bound - lower_bound) / step) + 1;
}

Value ControlPrimitiveSpec::clamp_to_grid(Value v) const {
  v = std::clamp(v, lower_bound, upper_bound);
  const Value off = (v - lower_bound) % step;
  return v - off;
}

std::vector<Direction> Region::directions() const {
  std::vector<Direction> dirs;
  dirs.reserve(objectives.size());
  for (const auto& o : objectives) dirs.push_back(o.direction);
  return dirs;
}

std::size_t Region::total_grid_size() const {
  std::size_t n = 0;
  for (const auto& p : primitives) n += p.grid_size();
  return n;
}

std::optional<std::size_t> Region::primitive_index(const std::string& id) const {
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    if (primitives[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t Region::count_violations(std::span<const double> objective_values) const {
  std::size_t n = 0;
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    if (objectives[o].violated_by(objective_values[o])) ++n;
  }
  return n;
}

std::map<std::string, Value> Decision::assignments(const Region& region) const {
  std::map<std::string, Value> out;
  for (std::size_t a = 0; a < values.size() && a < region.primitives.size(); ++a) {
    out[region.primitives[a].id] = values[a];
  }
  return out;
}

std::size_t DecisionHash::operator()(const Decision& d) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Value v : d.values) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

const PmSpec* Topology::find_pm(const std::string& id) const {
  for (const auto& pm : pms) {
    if (pm.id == id) return &pm;
  }
  return nullptr;
}

const VmSpec* Topology::find_vm(const std::string& id) const {
  for (const auto& vm : vms) {
    if (vm.id == id) return &vm;
  }
  return nullptr;
}

const ServiceInstanceSpec* Topology::find_instance(const std::string& id) const {
  for (const auto& s : instances) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<Violation> validate_primitive(const ControlPrimitiveSpec& p, const std::string& path) {
  std::vector<Violation> out;
  auto add = [&](std::string msg) { out.push_back({path, p.id + ": " + std::move(msg)}); };
  if (p.step <= 0) {
    add("step must be positive");
    return out;  // lattice checks below are meaningless without a step
  }
  if (!(p.hard_min <= p.lower_bound && p.lower_bound <= p.upper_bound && p.upper_bound <= p.hard_max)) {
    add("bounds must satisfy hard_min <= min <= max <= hard_max");
  }
  if (p.base_lower < p.hard_min || p.base_lower > p.upper_bound) add("predefined min outside [hard_min, max]");
  if (!p.on_lattice(p.lower_bound) || !p.on_lattice(p.upper_bound)) add("min and max must lie on the step grid");
  if (!p.on_grid(p.initial)) add("initial value must lie on the grid");
  if (!(p.price_per_unit >= 0.0)) add("price must be non-negative");
  if (!(p.adapt_threshold > 0.0 && p.adapt_threshold < 1.0)) add("adapt threshold t must be in (0, 1)");
  if (!(p.adapt_fraction > 0.0 && p.adapt_fraction < 1.0)) add("adapt fraction k must be in (0, 1)");
  if (!(p.util_trigger >= 0.0 && p.util_trigger <= 1.0)) add("utilization trigger u must be in [0, 1]");
  return out;
}

std::vector<Violation> validate_decision(const Region& region, const std::map<std::string, double>& decision) {
  std::vector<Violation> out;
  for (const auto& [id, value] : decision) {
    const auto idx = region.primitive_index(id);
    const std::string path = "decision." + id;
    if (!idx) {
      out.push_back({path, id + ": not a primitive of region " + region.id});
      continue;
    }
    const auto& spec = region.primitives[*idx];
    if (std::floor(value) != value || !spec.on_grid(static_cast<Value>(value))) {
      std::ostringstream msg;
      msg << id << ": value " << value << " is not on the grid [" << spec.lower_bound << ", "
          << spec.upper_bound << "] step " << spec.step;
      out.push_back({path, msg.str()});
    }
  }
  return out;
}

std::vector<Violation> validate_decision(const Region& region, const Decision& decision) {
  if (decision.values.size() != region.primitives.size()) {
    return {{"decision", "decision covers " + std::to_string(decision.values.size()) + " primitives, region " +
                             region.id + " has " + std::to_string(region.primitives.size())}};
  }
  std::map<std::string, double> raw;
  for (std::size_t a = 0; a < decision.values.size(); ++a) {
    raw[region.primitives[a].id] = static_cast<double>(decision.values[a]);
  }
  return validate_decision(region, raw);
}

}  // namespace autoscale
