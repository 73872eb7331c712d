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

#ifndef AUTOSCALE_DOMAIN_HPP
#define AUTOSCALE_DOMAIN_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace autoscale {

/// Grid values are exact integers in the primitive's smallest unit
/// (whole %, whole MB, thread count).
using Value = std::int64_t;

/// Raised for malformed scenarios, unknown model references and similar
/// configuration problems.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Direction { Minimize, Maximize };

enum class PrimitiveScope { PerService, PerVmShared };

enum class ResourceKind { Cpu, Memory, Thread };

enum class ObjectiveKind { ResponseTime, Throughput, Reliability, Availability, Cost, Custom };

const char* to_string(Direction d);
const char* to_string(PrimitiveScope s);
const char* to_string(ResourceKind k);
const char* to_string(ObjectiveKind k);

std::optional<ResourceKind> parse_resource_kind(const std::string& s);
std::optional<ObjectiveKind> parse_objective_kind(const std::string& s);

/// True iff `a` is strictly better than `b` under `dir`.
inline bool better(double a, double b, Direction dir) {
  return dir == Direction::Minimize ? a < b : a > b;
}

struct ControlPrimitiveSpec {
  std::string id;
  ResourceKind kind = ResourceKind::Cpu;
  PrimitiveScope scope = PrimitiveScope::PerVmShared;
  std::string owner;  // VM id for shared primitives, instance id otherwise
  std::string unit;
  Value initial = 0;
  Value step = 1;
  Value base_lower = 0;  // predefined lower bound; the adaptive lower never drops below it
  Value lower_bound = 0;
  Value upper_bound = 0;
  Value hard_min = 0;
  Value hard_max = 0;
  double price_per_unit = 0.0;
  double util_trigger = 0.5;      // u: utilization below which scaling triggers
  double adapt_threshold = 0.7;   // t
  double adapt_fraction = 0.1;    // k

  /// Grid values lie on the lattice hard_min + n*step.
  bool on_lattice(Value v) const { return step > 0 && (v - hard_min) % step == 0; }
  bool on_grid(Value v) const { return on_lattice(v) && v >= lower_bound && v <= upper_bound; }
  /// Nearest lattice point to `v` (ties round up).
  Value round_to_lattice(double v) const;
  std::vector<Value> enumerate_grid() const;
  std::size_t grid_size() const;
  Value clamp_to_grid(Value v) const;
};

struct EnvironmentalPrimitive {
  std::string id;
  std::string owner;
  std::vector<double> value_series;
};

struct ObjectiveSpec {
  std::string id;
  ObjectiveKind kind = ObjectiveKind::ResponseTime;
  Direction direction = Direction::Minimize;
  std::string owner;  // service-instance id
  double threshold = std::numeric_limits<double>::infinity();
  std::string model_ref;

  /// True when `value` breaks the requirement (SLA or budget).
  bool violated_by(double value) const {
    return direction == Direction::Minimize ? value > threshold : value < threshold;
  }
};

/// A set of dependent objectives optimized jointly, together with the union
/// of their control inputs. Decisions are dense vectors aligned with
/// `primitives`.
struct Region {
  std::string id;
  std::vector<ObjectiveSpec> objectives;
  std::vector<ControlPrimitiveSpec> primitives;

  std::size_t num_objectives() const { return objectives.size(); }
  std::size_t num_primitives() const { return primitives.size(); }
  std::vector<Direction> directions() const;
  std::size_t total_grid_size() const;
  std::optional<std::size_t> primitive_index(const std::string& id) const;
  /// Number of objectives whose predicted value breaks its threshold.
  std::size_t count_violations(std::span<const double> objective_values) const;
};

/// One value per primitive of a region, in region order.
struct Decision {
  std::vector<Value> values;

  bool operator==(const Decision&) const = default;
  auto operator<=>(const Decision&) const = default;

  std::map<std::string, Value> assignments(const Region& region) const;
};

struct DecisionHash {
  std::size_t operator()(const Decision& d) const noexcept;
};

struct PmSpec {
  std::string id;
  double cpu_capacity = 100.0;
  double memory_capacity = 1024.0;
};

struct VmSpec {
  std::string id;
  std::string pm;
  std::optional<std::string> replica_of;
};

struct ServiceInstanceSpec {
  std::string id;
  std::string service;  // logical service; trace rows and replicas share it
  std::string vm;
  bool managed = true;
  std::optional<std::string> replica_of;
};

struct Topology {
  std::vector<PmSpec> pms;
  std::vector<VmSpec> vms;
  std::vector<ServiceInstanceSpec> instances;

  const PmSpec* find_pm(const std::string& id) const;
  const VmSpec* find_vm(const std::string& id) const;
  const ServiceInstanceSpec* find_instance(const std::string& id) const;
};

struct Violation {
  std::string path;
  std::string message;
};

std::vector<Violation> validate_primitive(const ControlPrimitiveSpec& spec, const std::string& path);
/// Empty iff `decision` covers exactly the region's primitives with on-grid values.
std::vector<Violation> validate_decision(const Region& region, const std::map<std::string, double>& decision);
std::vector<Violation> validate_decision(const Region& region, const Decision& decision);

}  // namespace autoscale

#endif  // AUTOSCALE_DOMAIN_HPP
