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

#ifndef AUTOSCALE_QOS_MODEL_HPP
#define AUTOSCALE_QOS_MODEL_HPP

#include <autoscale/domain.hpp>
#include <autoscale/rng.hpp>

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace autoscale {

/// Coefficients of the interference-aware queueing model for one logical
/// service. Capacities are in req/min, times in ms, memory in MB.
struct ServiceModelParams {
  double base_response_ms = 1.0;
  double cpu_capacity = 12.0;       // req/min per effective %CPU
  double thread_capacity = 10.0;    // req/min per non-saturated thread
  double memory_per_thread = 20.0;  // MB a thread needs before it saturates
  double thread_penalty = 15.0;     // req/min lost per thread beyond saturation
  double min_capacity = 1.0;
  double reliability_rt_ms = 2.0;   // requests slower than this count as unreliable
  double reliability_slope = 3.0;
  double availability_rt_ms = 4.0;
  double availability_slope = 3.0;
  // Resource demand, used for utilization and provisioning records.
  double cpu_base = 0.0;            // %CPU
  double cpu_per_request = 0.08;    // %CPU per req/min
  double memory_base = 100.0;       // MB
  double memory_per_request = 0.2;  // MB per req/min
  double requests_per_thread = 40.0;
};

inline constexpr const char* kInterferenceQueueModel = "interference-queue";
inline constexpr const char* kLinearCostModel = "linear-cost";

struct ModelSet {
  ServiceModelParams defaults;
  std::map<std::string, ServiceModelParams> services;  // keyed by logical service
  double noise_std = 0.0;
  /// (instance id, neighbor VM id) -> weight of the neighbor's demand in
  /// PM-level contention; missing pairs use `coupling_default`.
  std::map<std::pair<std::string, std::string>, double> coupling;
  double coupling_default = 1.0;

  const ServiceModelParams& params_for(const std::string& service) const;
  bool knows(const std::string& model_ref, ObjectiveKind kind) const;
};

/// Live state of the cluster during one sampling interval.
struct EnvironmentState {
  std::size_t interval_index = 0;
  std::map<std::string, double> workloads;        // instance -> req/min
  std::map<std::string, Value> configuration;     // primitive -> live value
  std::map<std::string, double> utilizations;     // primitive -> [0, 1]
  std::map<std::string, double> demands;          // primitive -> uncapped demand in units
  std::map<std::string, double> observed;         // objective -> observed value
};

struct InstancePrediction {
  double response_time = 0.0;
  double throughput = 0.0;
  double reliability = 0.0;
  double availability = 0.0;
  double cost = 0.0;
  double capacity = 0.0;
  double workload = 0.0;
};

/// The model set bound to one cluster snapshot (topology, primitive table,
/// workloads). Evaluations take a full primitive-value vector so callers can
/// overlay candidate decisions on the live configuration.
class ClusterModel {
 public:
  ClusterModel(const ModelSet& models, const Topology& topology,
               std::vector<ControlPrimitiveSpec> primitives, const EnvironmentState& env);

  const std::vector<ControlPrimitiveSpec>& primitives() const { return primitives_; }
  std::optional<std::size_t> primitive_index(const std::string& id) const;
  std::optional<std::size_t> instance_index(const std::string& id) const;
  const std::vector<Value>& live_values() const { return live_; }
  const ModelSet& models() const { return *models_; }
  double workload(std::size_t instance) const { return instances_[instance].workload; }

  InstancePrediction predict_instance(std::size_t instance, std::span<const Value> values) const;
  double objective_value(const ObjectiveSpec& objective, const InstancePrediction& p) const;
  /// Uncapped resource demand of primitive `p` in its own units.
  double demand(std::size_t primitive) const { return demand_[primitive]; }
  double utilization(std::size_t primitive, Value provision) const;

 private:
  struct Vm {
    std::size_t pm = 0;
    std::size_t cpu = 0;
    std::size_t memory = 0;
    std::vector<std::size_t> instances;
  };
  struct Instance {
    std::size_t vm = 0;
    std::size_t thread = 0;
    const ServiceModelParams* params = nullptr;
    double workload = 0.0;
    std::vector<std::size_t> cost_primitives;
    std::vector<std::pair<std::size_t, double>> neighbors;  // (vm, coupling)
  };

  const ModelSet* models_;
  std::vector<ControlPrimitiveSpec> primitives_;
  std::vector<Value> live_;
  std::vector<double> demand_;
  std::vector<PmSpec> pms_;
  std::vector<Vm> vms_;
  std::vector<Instance> instances_;
  std::map<std::string, std::size_t> primitive_lookup_;
  std::map<std::string, std::size_t> instance_lookup_;
};

/// Maps a candidate decision to the region's predicted objective vector.
class RegionEvaluator {
 public:
  virtual ~RegionEvaluator() = default;
  virtual std::size_t num_objectives() const = 0;
  virtual void evaluate(std::span<const Value> decision, std::span<double> out) const = 0;

  std::vector<double> evaluate(const Decision& d) const {
    std::vector<double> out(num_objectives());
    evaluate(d.values, out);
    return out;
  }
};

class ModelRegionEvaluator final : public RegionEvaluator {
 public:
  /// Throws ConfigError when an objective names an unknown model or owner.
  ModelRegionEvaluator(const ClusterModel& cluster, const Region& region);

  std::size_t num_objectives() const override { return objectives_.size(); }
  using RegionEvaluator::evaluate;
  void evaluate(std::span<const Value> decision, std::span<double> out) const override;

 private:
  const ClusterModel* cluster_;
  std::vector<std::size_t> slots_;  // region primitive -> cluster primitive
  std::vector<std::pair<std::size_t, ObjectiveSpec>> objectives_;  // (instance, spec)
};

/// Deterministic model prediction of one objective under decision `d`.
double predict(const ClusterModel& cluster, const Region& region, const ObjectiveSpec& objective,
               const Decision& d);

/// Clamp into the objective's physical range: non-negative, percentages in
/// [0, 100], throughput no larger than the offered workload.
double clamp_observation(ObjectiveKind kind, double value, double workload);

/// Prediction perturbed by multiplicative Normal(1, noise_std) noise.
double observe(const ClusterModel& cluster, const Region& region, const ObjectiveSpec& objective,
               const Decision& d, Rng& rng);

}  // namespace autoscale

#endif  // AUTOSCALE_QOS_MODEL_HPP
