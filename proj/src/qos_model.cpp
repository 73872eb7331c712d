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

#include <autoscale/qos_model.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace autoscale {

namespace {

double sigmoid_pct(double slope, double margin) { return 100.0 / (1.0 + std::exp(-slope * margin)); }

// Capacity share of a VM resource left after co-hosted VMs take their demand
// beyond the PM's capacity.
double effective_share(double own, double neighbor_usage, double capacity) {
  const double total = own + neighbor_usage;
  if (own <= 0.0) return 0.0;
  if (total <= capacity) return own;
  return own * capacity / total;
}

}  // namespace

const ServiceModelParams& ModelSet::params_for(const std::string& service) const {
  auto it = services.find(service);
  return it == services.end() ? defaults : it->second;
}

bool ModelSet::knows(const std::string& model_ref, ObjectiveKind kind) const {
  if (model_ref == kInterferenceQueueModel) {
    return kind == ObjectiveKind::ResponseTime || kind == ObjectiveKind::Throughput ||
           kind == ObjectiveKind::Reliability || kind == ObjectiveKind::Availability;
  }
  if (model_ref == kLinearCostModel) return kind == ObjectiveKind::Cost;
  return false;
}

ClusterModel::ClusterModel(const ModelSet& models, const Topology& topology,
                           std::vector<ControlPrimitiveSpec> primitives, const EnvironmentState& env)
    : models_(&models), primitives_(std::move(primitives)), pms_(topology.pms) {
  for (std::size_t i = 0; i < primitives_.size(); ++i) primitive_lookup_[primitives_[i].id] = i;

  live_.resize(primitives_.size());
  for (std::size_t i = 0; i < primitives_.size(); ++i) {
    auto it = env.configuration.find(primitives_[i].id);
    live_[i] = it == env.configuration.end() ? primitives_[i].initial : it->second;
  }

  auto find_primitive = [&](const std::string& owner, ResourceKind kind) -> std::size_t {
    for (std::size_t i = 0; i < primitives_.size(); ++i) {
      if (primitives_[i].owner == owner && primitives_[i].kind == kind) return i;
    }
    throw ConfigError("no " + std::string(to_string(kind)) + " primitive owned by " + owner);
  };

  std::map<std::string, std::size_t> vm_lookup;
  for (const auto& vm : topology.vms) {
    Vm v;
    auto pm = std::find_if(pms_.begin(), pms_.end(), [&](const PmSpec& p) { return p.id == vm.pm; });
    if (pm == pms_.end()) throw ConfigError("VM " + vm.id + " references unknown PM " + vm.pm);
    v.pm = static_cast<std::size_t>(pm - pms_.begin());
    v.cpu = find_primitive(vm.id, ResourceKind::Cpu);
    v.memory = find_primitive(vm.id, ResourceKind::Memory);
    vm_lookup[vm.id] = vms_.size();
    vms_.push_back(std::move(v));
  }

  demand_.assign(primitives_.size(), 0.0);
  for (const auto& inst : topology.instances) {
    auto vm_it = vm_lookup.find(inst.vm);
    if (vm_it == vm_lookup.end()) throw ConfigError("instance " + inst.id + " references unknown VM " + inst.vm);
    Instance s;
    s.vm = vm_it->second;
    s.thread = find_primitive(inst.id, ResourceKind::Thread);
    s.params = &models.params_for(inst.service);
    auto w = env.workloads.find(inst.id);
    s.workload = w == env.workloads.end() ? 0.0 : w->second;
    for (std::size_t i = 0; i < primitives_.size(); ++i) {
      const auto& p = primitives_[i];
      if ((p.scope == PrimitiveScope::PerService && p.owner == inst.id) ||
          (p.scope == PrimitiveScope::PerVmShared && p.owner == inst.vm)) {
        s.cost_primitives.push_back(i);
      }
    }
    const Vm& own = vms_[s.vm];
    for (std::size_t j = 0; j < topology.vms.size(); ++j) {
      if (j == s.vm || vms_[j].pm != own.pm) continue;
      auto c = models.coupling.find({inst.id, topology.vms[j].id});
      s.neighbors.emplace_back(j, c == models.coupling.end() ? models.coupling_default : c->second);
    }

    const auto& prm = *s.params;
    demand_[own.cpu] += prm.cpu_base + s.workload * prm.cpu_per_request;
    demand_[own.memory] += prm.memory_base + s.workload * prm.memory_per_request;
    demand_[s.thread] += prm.requests_per_thread > 0.0 ? s.workload / prm.requests_per_thread : 0.0;

    instance_lookup_[inst.id] = instances_.size();
    vms_[s.vm].instances.push_back(instances_.size());
    instances_.push_back(std::move(s));
  }
}

std::optional<std::size_t> ClusterModel::primitive_index(const std::string& id) const {
  auto it = primitive_lookup_.find(id);
  if (it == primitive_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ClusterModel::instance_index(const std::string& id) const {
  auto it = instance_lookup_.find(id);
  if (it == instance_lookup_.end()) return std::nullopt;
  return it->second;
}

double ClusterModel::utilization(std::size_t primitive, Value provision) const {
  if (provision <= 0) return 1.0;
  return std::clamp(demand_[primitive] / static_cast<double>(provision), 0.0, 1.0);
}

InstancePrediction ClusterModel::predict_instance(std::size_t instance, std::span<const Value> values) const {
  const Instance& s = instances_[instance];
  const Vm& vm = vms_[s.vm];
  const PmSpec& pm = pms_[vm.pm];
  const ServiceModelParams& prm = *s.params;

  double neighbor_cpu = 0.0;
  double neighbor_mem = 0.0;
  for (const auto& [j, weight] : s.neighbors) {
    const Vm& n = vms_[j];
    neighbor_cpu += weight * std::min(static_cast<double>(values[n.cpu]), demand_[n.cpu]);
    neighbor_mem += weight * std::min(static_cast<double>(values[n.memory]), demand_[n.memory]);
  }
  const double cpu_eff = effective_share(static_cast<double>(values[vm.cpu]), neighbor_cpu, pm.cpu_capacity);
  const double mem_eff = effective_share(static_cast<double>(values[vm.memory]), neighbor_mem, pm.memory_capacity);

  double threads_on_vm = 0.0;
  for (std::size_t k : vm.instances) threads_on_vm += static_cast<double>(values[instances_[k].thread]);
  const double threads = static_cast<double>(values[s.thread]);
  const double share = threads_on_vm > 0.0 ? threads / threads_on_vm : 0.0;

  const double saturation = prm.memory_per_thread > 0.0 ? mem_eff * share / prm.memory_per_thread : threads;
  double capacity = prm.cpu_capacity * cpu_eff * share + prm.thread_capacity * std::min(threads, saturation) -
                    prm.thread_penalty * std::max(0.0, threads - saturation);
  capacity = std::max(capacity, prm.min_capacity);

  InstancePrediction p;
  p.capacity = capacity;
  p.workload = s.workload;
  const double load = std::min(s.workload / capacity, 0.99);
  p.response_time = prm.base_response_ms / (1.0 - load);
  p.throughput = std::min(s.workload, capacity);
  p.reliability = sigmoid_pct(prm.reliability_slope, prm.reliability_rt_ms - p.response_time);
  p.availability = sigmoid_pct(prm.availability_slope, prm.availability_rt_ms - p.response_time);
  for (std::size_t i : s.cost_primitives) p.cost += static_cast<double>(values[i]) * primitives_[i].price_per_unit;
  return p;
}

double ClusterModel::objective_value(const ObjectiveSpec& objective, const InstancePrediction& p) const {
  switch (objective.kind) {
    case ObjectiveKind::ResponseTime: return p.response_time;
    case ObjectiveKind::Throughput: return p.throughput;
    case ObjectiveKind::Reliability: return p.reliability;
    case ObjectiveKind::Availability: return p.availability;
    case ObjectiveKind::Cost: return p.cost;
    case ObjectiveKind::Custom: break;
  }
  throw ConfigError("objective " + objective.id + ": no built-in model for custom objectives");
}

ModelRegionEvaluator::ModelRegionEvaluator(const ClusterModel& cluster, const Region& region)
    : cluster_(&cluster) {
  for (const auto& p : region.primitives) {
    auto idx = cluster.primitive_index(p.id);
    if (!idx) throw ConfigError("region primitive " + p.id + " is not part of the cluster");
    slots_.push_back(*idx);
  }
  for (const auto& o : region.objectives) {
    if (!cluster.models().knows(o.model_ref, o.kind)) {
      throw ConfigError("objective " + o.id + ": unknown model_ref '" + o.model_ref + "' for " + to_string(o.kind));
    }
    auto inst = cluster.instance_index(o.owner);
    if (!inst) throw ConfigError("objective " + o.id + " owned by unknown instance " + o.owner);
    objectives_.emplace_back(*inst, o);
  }
}

void ModelRegionEvaluator::evaluate(std::span<const Value> decision, std::span<double> out) const {
  if (decision.size() != slots_.size() || out.size() != objectives_.size()) {
    throw ContractViolation("decision or output size does not match the region");
  }
  thread_local std::vector<Value> values;
  values = cluster_->live_values();
  for (std::size_t a = 0; a < slots_.size(); ++a) values[slots_[a]] = decision[a];

  // Objectives of one instance are adjacent in most regions; reuse the last prediction.
  std::size_t last = static_cast<std::size_t>(-1);
  InstancePrediction pred;
  for (std::size_t o = 0; o < objectives_.size(); ++o) {
    const auto& [inst, spec] = objectives_[o];
    if (inst != last) {
      pred = cluster_->predict_instance(inst, values);
      last = inst;
    }
    out[o] = cluster_->objective_value(spec, pred);
  }
}

double predict(const ClusterModel& cluster, const Region& region, const ObjectiveSpec& objective,
               const Decision& d) {
  if (!cluster.primitives().empty() && d.values.size() != region.primitives.size()) {
    throw ContractViolation("decision does not cover the region");
  }
  Region single{region.id, {objective}, region.primitives};
  ModelRegionEvaluator eval(cluster, single);
  double value = 0.0;
  eval.evaluate(d.values, std::span<double>(&value, 1));
  return value;
}

double clamp_observation(ObjectiveKind kind, double value, double workload) {
  value = std::max(value, 0.0);
  switch (kind) {
    case ObjectiveKind::Reliability:
    case ObjectiveKind::Availability: return std::min(value, 100.0);
    case ObjectiveKind::Throughput: return std::min(value, std::max(workload, 0.0));
    default: return value;
  }
}

double observe(const ClusterModel& cluster, const Region& region, const ObjectiveSpec& objective,
               const Decision& d, Rng& rng) {
  const double noise_std = cluster.models().noise_std;
  double value = predict(cluster, region, objective, d);
  if (noise_std > 0.0) value *= std::normal_distribution<double>(1.0, noise_std)(rng);
  double workload = 0.0;
  if (auto inst = cluster.instance_index(objective.owner)) workload = cluster.workload(*inst);
  return clamp_observation(objective.kind, value, workload);
}

}  // namespace autoscale
