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

#ifndef AUTOSCALE_SIMULATOR_HPP
#define AUTOSCALE_SIMULATOR_HPP

#include <autoscale/domain.hpp>
#include <autoscale/qos_model.hpp>
#include <autoscale/rng.hpp>
#include <autoscale/trace.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace autoscale {

enum class Trigger { None, SlaViolation, LowUtilization };

const char* to_string(Trigger t);

/// SLA breach of any observed objective wins over low utilization of any
/// region primitive.
Trigger detect_trigger(const EnvironmentState& env, const Region& region);

/// The k% rule: grow the upper bound when both the decided and the observed
/// value sit at or above t * upper, shrink it when both sit below; the lower
/// bound follows the larger of its predefined value and the observation.
ControlPrimitiveSpec adapt_bounds(ControlPrimitiveSpec spec, Value decided, Value observed);

struct RegionDeclaration {
  std::string id;
  std::vector<std::string> objectives;
};

/// Everything the environment simulator needs; built from a scenario.
struct SimulationSetup {
  ModelSet models;
  Topology topology;
  std::vector<ControlPrimitiveSpec> primitives;
  std::vector<ObjectiveSpec> objectives;
  std::vector<RegionDeclaration> regions;
  std::size_t max_replicas_per_vm = 1;
  /// Live values at interval 0 that differ from the primitives' `initial`.
  std::map<std::string, Value> initial_configuration;
};

/// Model inputs of the objectives in `decl`: for service objectives, every
/// managed primitive on the owner's PM; for cost, the owner's own primitives.
Region build_region(const SimulationSetup& setup, const RegionDeclaration& decl,
                    const std::vector<ControlPrimitiveSpec>& current_specs);

class TraceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discrete-interval environment: vertical scaling is applied instantly,
/// horizontal scaling one interval after it is triggered.
class Simulator {
 public:
  Simulator(SimulationSetup setup, Trace trace, Rng rng);

  /// Interval 0 with the initial configuration.
  const EnvironmentState& reset();
  /// Applies `decision` (primitive id -> value) and advances one interval.
  /// Throws TraceExhausted when the trace has no further interval.
  const EnvironmentState& step(const std::optional<std::map<std::string, Value>>& decision);

  const EnvironmentState& state() const { return env_; }
  const Topology& topology() const { return topology_; }
  const std::vector<ControlPrimitiveSpec>& primitives() const { return primitives_; }
  const SimulationSetup& setup() const { return setup_; }
  std::size_t num_regions() const { return setup_.regions.size(); }
  /// Region with the current (adapted) primitive bounds.
  Region region(std::size_t index) const;
  /// Model bound to the current topology, configuration and workloads.
  ClusterModel cluster_model() const;
  const ControlPrimitiveSpec& primitive(const std::string& id) const;

 private:
  struct PendingScaleOut {
    std::string vm;
  };

  void apply_pending();
  void distribute_workload();
  void measure();
  void schedule_horizontal();
  std::size_t replica_count(const std::string& vm) const;
  void rebuild_lookup();

  SimulationSetup setup_;
  Trace trace_;
  Rng rng_;
  Topology topology_;
  std::vector<ControlPrimitiveSpec> primitives_;
  std::map<std::string, std::size_t> primitive_lookup_;
  EnvironmentState env_;
  std::vector<PendingScaleOut> pending_out_;
  std::vector<std::string> pending_in_;
  std::map<std::string, std::size_t> replica_serial_;
  std::map<std::string, std::vector<std::string>> replica_primitives_;  // origin -> mirrors
};

}  // namespace autoscale

#endif  // AUTOSCALE_SIMULATOR_HPP
