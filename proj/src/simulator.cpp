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

#include <autoscale/simulator.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace autoscale {

const char* to_string(Trigger t) {
  switch (t) {
    case Trigger::None: return "none";
    case Trigger::SlaViolation: return "sla-violation";
    case Trigger::LowUtilization: return "low-utilization";
  }
  return "?";
}

Trigger detect_trigger(const EnvironmentState& env, const Region& region) {
  for (const auto& o : region.objectives) {
    auto it = env.observed.find(o.id);
    if (it != env.observed.end() && o.violated_by(it->second)) return Trigger::SlaViolation;
  }
  for (const auto& p : region.primitives) {
    auto it = env.utilizations.find(p.id);
    if (it != env.utilizations.end() && it->second < p.util_trigger) return Trigger::LowUtilization;
  }
  return Trigger::None;
}

namespace {

Value lattice_floor(const ControlPrimitiveSpec& s, Value v) {
  const Value off = (v - s.hard_min) % s.step;
  return off >= 0 ? v - off : v - off - s.step;
}

Value lattice_ceil(const ControlPrimitiveSpec& s, double v) {
  const double n = std::ceil((v - static_cast<double>(s.hard_min)) / static_cast<double>(s.step) - 1e-9);
  return s.hard_min + static_cast<Value>(n) * s.step;
}

}  // namespace

ControlPrimitiveSpec adapt_bounds(ControlPrimitiveSpec spec, Value decided, Value observed) {
  const Value ceiling = lattice_floor(spec, spec.hard_max);
  const double threshold = spec.adapt_threshold * static_cast<double>(spec.upper_bound);
  const auto d = static_cast<double>(decided);
  const auto o = static_cast<double>(observed);
  if (d >= threshold && o >= threshold) {
    const Value grown = spec.round_to_lattice(static_cast<double>(spec.upper_bound) * (1.0 + spec.adapt_fraction));
    spec.upper_bound = std::min(ceiling, grown);
  } else if (d < threshold && o < threshold) {
    const Value shrunk = spec.round_to_lattice(static_cast<double>(spec.upper_bound) * (1.0 - spec.adapt_fraction));
    spec.upper_bound = std::max(spec.lower_bound, shrunk);
  }
  spec.upper_bound = std::clamp(spec.upper_bound, spec.hard_min, ceiling);

  const Value floor_value = std::max(spec.base_lower, lattice_ceil(spec, static_cast<double>(observed)));
  spec.lower_bound = std::clamp(floor_value, spec.hard_min, spec.upper_bound);
  return spec;
}

Region build_region(const SimulationSetup& setup, const RegionDeclaration& decl,
                    const std::vector<ControlPrimitiveSpec>& current_specs) {
  Region region;
  region.id = decl.id;
  const Topology& topo = setup.topology;

  std::set<std::string> input_owners;  // VM and instance ids whose primitives are inputs
  auto managed_vm = [&](const VmSpec& vm) { return !vm.replica_of.has_value(); };
  for (const auto& id : decl.objectives) {
    auto it = std::find_if(setup.objectives.begin(), setup.objectives.end(),
                           [&](const ObjectiveSpec& o) { return o.id == id; });
    if (it == setup.objectives.end()) throw ConfigError("region " + decl.id + ": unknown objective " + id);
    region.objectives.push_back(*it);

    const ServiceInstanceSpec* inst = topo.find_instance(it->owner);
    if (!inst) throw ConfigError("objective " + id + ": unknown owner " + it->owner);
    const VmSpec* vm = topo.find_vm(inst->vm);
    if (!vm) throw ConfigError("instance " + inst->id + ": unknown VM " + inst->vm);
    if (it->kind == ObjectiveKind::Cost) {
      if (inst->managed) input_owners.insert(inst->id);
      input_owners.insert(vm->id);
      continue;
    }
    for (const auto& other : topo.vms) {
      if (other.pm != vm->pm || !managed_vm(other)) continue;
      input_owners.insert(other.id);
      for (const auto& s : topo.instances) {
        if (s.vm == other.id && s.managed && !s.replica_of) input_owners.insert(s.id);
      }
    }
  }
  for (const auto& p : current_specs) {
    if (input_owners.count(p.owner)) region.primitives.push_back(p);
  }
  return region;
}

Simulator::Simulator(SimulationSetup setup, Trace trace, Rng rng)
    : setup_(std::move(setup)), trace_(std::move(trace)), rng_(rng) {
  for (const auto& o : setup_.objectives) {
    if (!setup_.models.knows(o.model_ref, o.kind)) {
      throw ConfigError("objective " + o.id + ": unknown model_ref '" + o.model_ref + "'");
    }
  }
  for (const auto& r : setup_.regions) (void)build_region(setup_, r, setup_.primitives);
  reset();
}

void Simulator::rebuild_lookup() {
  primitive_lookup_.clear();
  for (std::size_t i = 0; i < primitives_.size(); ++i) primitive_lookup_[primitives_[i].id] = i;
}

const EnvironmentState& Simulator::reset() {
  topology_ = setup_.topology;
  primitives_ = setup_.primitives;
  rebuild_lookup();
  pending_out_.clear();
  pending_in_.clear();
  replica_serial_.clear();
  replica_primitives_.clear();
  env_ = EnvironmentState{};
  for (const auto& p : primitives_) {
    auto it = setup_.initial_configuration.find(p.id);
    env_.configuration[p.id] = it == setup_.initial_configuration.end() ? p.initial : it->second;
  }
  if (trace_.length() == 0) throw TraceExhausted("trace has no intervals");
  distribute_workload();
  measure();
  schedule_horizontal();
  return env_;
}

const EnvironmentState& Simulator::step(const std::optional<std::map<std::string, Value>>& decision) {
  if (env_.interval_index + 1 >= trace_.length()) {
    throw TraceExhausted("trace exhausted after interval " + std::to_string(env_.interval_index));
  }
  apply_pending();
  if (decision) {
    for (const auto& [id, value] : *decision) {
      if (!primitive_lookup_.count(id)) throw ContractViolation("decision names unknown primitive " + id);
      env_.configuration[id] = value;
      auto mirrors = replica_primitives_.find(id);
      if (mirrors == replica_primitives_.end()) continue;
      for (const auto& m : mirrors->second) env_.configuration[m] = value;
    }
  }
  ++env_.interval_index;
  distribute_workload();
  measure();
  if (decision) {
    const ClusterModel model = cluster_model();
    for (const auto& [id, value] : *decision) {
      const std::size_t i = primitive_lookup_.at(id);
      auto& spec = primitives_[i];
      const double used = std::min(static_cast<double>(value), model.demand(i));
      const Value observed = std::clamp(lattice_ceil(spec, used), spec.hard_min, spec.hard_max);
      spec = adapt_bounds(spec, value, observed);
    }
  }
  schedule_horizontal();
  return env_;
}

Region Simulator::region(std::size_t index) const {
  return build_region(setup_, setup_.regions.at(index), primitives_);
}

ClusterModel Simulator::cluster_model() const {
  return ClusterModel(setup_.models, topology_, primitives_, env_);
}

const ControlPrimitiveSpec& Simulator::primitive(const std::string& id) const {
  return primitives_.at(primitive_lookup_.at(id));
}

std::size_t Simulator::replica_count(const std::string& vm) const {
  return static_cast<std::size_t>(std::count_if(topology_.vms.begin(), topology_.vms.end(),
                                                [&](const VmSpec& v) { return v.replica_of == vm; }));
}

void Simulator::distribute_workload() {
  env_.workloads.clear();
  std::map<std::string, std::vector<std::string>> by_service;
  for (const auto& s : topology_.instances) by_service[s.service].push_back(s.id);
  for (const auto& [service, ids] : by_service) {
    const double total = trace_.value(service, env_.interval_index);
    for (const auto& id : ids) env_.workloads[id] = total / static_cast<double>(ids.size());
  }
}

void Simulator::measure() {
  const ClusterModel model = cluster_model();
  env_.utilizations.clear();
  env_.demands.clear();
  for (std::size_t i = 0; i < primitives_.size(); ++i) {
    const auto& p = primitives_[i];
    env_.demands[p.id] = model.demand(i);
    env_.utilizations[p.id] = model.utilization(i, env_.configuration.at(p.id));
  }
  env_.observed.clear();
  const double noise = setup_.models.noise_std;
  std::normal_distribution<double> jitter(1.0, noise > 0.0 ? noise : 1.0);
  for (const auto& o : setup_.objectives) {
    const auto inst = model.instance_index(o.owner);
    if (!inst) continue;
    const InstancePrediction pred = model.predict_instance(*inst, model.live_values());
    double value = model.objective_value(o, pred);
    if (noise > 0.0) value *= jitter(rng_);
    env_.observed[o.id] = clamp_observation(o.kind, value, pred.workload);
  }
}

void Simulator::schedule_horizontal() {
  pending_out_.clear();
  pending_in_.clear();

  auto spec_of = [&](const std::string& vm, ResourceKind kind) -> const ControlPrimitiveSpec* {
    for (const auto& p : primitives_) {
      if (p.owner == vm && p.kind == kind && p.scope == PrimitiveScope::PerVmShared) return &p;
    }
    return nullptr;
  };

  for (const auto& pm : topology_.pms) {
    for (ResourceKind kind : {ResourceKind::Cpu, ResourceKind::Memory}) {
      const double capacity = kind == ResourceKind::Cpu ? pm.cpu_capacity : pm.memory_capacity;
      double summed = 0.0;
      const VmSpec* widest = nullptr;
      Value widest_upper = 0;
      for (const auto& vm : topology_.vms) {
        if (vm.pm != pm.id) continue;
        const auto* spec = spec_of(vm.id, kind);
        if (!spec) continue;
        summed += static_cast<double>(spec->upper_bound);
        if (!vm.replica_of && replica_count(vm.id) < setup_.max_replicas_per_vm &&
            (!widest || spec->upper_bound > widest_upper)) {
          widest = &vm;
          widest_upper = spec->upper_bound;
        }
      }
      if (summed > capacity && widest) {
        pending_out_.push_back({widest->id});
        break;  // at most one scale-out per PM and interval
      }
    }
  }

  for (const auto& vm : topology_.vms) {
    if (!vm.replica_of) continue;
    bool idle = true;
    for (ResourceKind kind : {ResourceKind::Cpu, ResourceKind::Memory}) {
      const auto* spec = spec_of(vm.id, kind);
      const auto* origin = spec_of(*vm.replica_of, kind);
      if (!spec || !origin) {
        idle = false;
        break;
      }
      const Value live = env_.configuration.at(spec->id);
      if (live > origin->lower_bound || env_.utilizations.at(spec->id) >= spec->util_trigger) idle = false;
    }
    if (idle) pending_in_.push_back(vm.id);
  }
}

void Simulator::apply_pending() {
  for (const auto& vm_id : pending_in_) {
    std::set<std::string> owners{vm_id};
    for (const auto& s : topology_.instances) {
      if (s.vm == vm_id) owners.insert(s.id);
    }
    std::erase_if(topology_.instances, [&](const ServiceInstanceSpec& s) { return s.vm == vm_id; });
    std::erase_if(topology_.vms, [&](const VmSpec& v) { return v.id == vm_id; });
    for (const auto& p : primitives_) {
      if (!owners.count(p.owner)) continue;
      env_.configuration.erase(p.id);
      for (auto& [_, mirrors] : replica_primitives_) std::erase(mirrors, p.id);
    }
    std::erase_if(primitives_, [&](const ControlPrimitiveSpec& p) { return owners.count(p.owner) != 0; });
  }

  for (const auto& out : pending_out_) {
    const VmSpec* origin = topology_.find_vm(out.vm);
    if (!origin || replica_count(out.vm) >= setup_.max_replicas_per_vm) continue;

    std::vector<ControlPrimitiveSpec> vm_specs;
    for (const auto& p : primitives_) {
      if (p.owner == origin->id && p.scope == PrimitiveScope::PerVmShared) vm_specs.push_back(p);
    }
    auto initial_of = [&](ResourceKind kind) {
      for (const auto& p : vm_specs) {
        if (p.kind == kind) return static_cast<double>(p.initial);
      }
      return 0.0;
    };

    // First other PM with room for the clone's initial allocation.
    const PmSpec* target = nullptr;
    for (const auto& pm : topology_.pms) {
      if (pm.id == origin->pm) continue;
      double cpu = initial_of(ResourceKind::Cpu);
      double mem = initial_of(ResourceKind::Memory);
      for (const auto& vm : topology_.vms) {
        if (vm.pm != pm.id) continue;
        for (const auto& p : primitives_) {
          if (p.owner != vm.id || p.scope != PrimitiveScope::PerVmShared) continue;
          if (p.kind == ResourceKind::Cpu) cpu += static_cast<double>(env_.configuration.at(p.id));
          if (p.kind == ResourceKind::Memory) mem += static_cast<double>(env_.configuration.at(p.id));
        }
      }
      if (cpu <= pm.cpu_capacity && mem <= pm.memory_capacity) {
        target = &pm;
        break;
      }
    }
    if (!target) continue;

    const std::size_t serial = ++replica_serial_[origin->id];
    const std::string suffix = "-r" + std::to_string(serial);
    VmSpec clone{origin->id + suffix, target->id, origin->id};

    auto clone_primitive = [&](const ControlPrimitiveSpec& p, const std::string& new_owner) {
      ControlPrimitiveSpec c = p;
      const std::string prefix = p.owner + ".";
      c.id = new_owner + "." + (p.id.rfind(prefix, 0) == 0 ? p.id.substr(prefix.size()) : to_string(p.kind));
      c.owner = new_owner;
      env_.configuration[c.id] = c.initial;
      replica_primitives_[p.id].push_back(c.id);
      return c;
    };

    std::vector<ControlPrimitiveSpec> added;
    for (const auto& p : vm_specs) added.push_back(clone_primitive(p, clone.id));
    std::vector<ServiceInstanceSpec> new_instances;
    for (const auto& s : topology_.instances) {
      if (s.vm != origin->id) continue;
      ServiceInstanceSpec r{s.id + suffix, s.service, clone.id, s.managed, s.id};
      for (const auto& p : primitives_) {
        if (p.owner == s.id && p.scope == PrimitiveScope::PerService) added.push_back(clone_primitive(p, r.id));
      }
      new_instances.push_back(std::move(r));
    }
    topology_.vms.push_back(std::move(clone));
    for (auto& s : new_instances) topology_.instances.push_back(std::move(s));
    for (auto& p : added) primitives_.push_back(std::move(p));
  }

  pending_in_.clear();
  pending_out_.clear();
  rebuild_lookup();
}

}  // namespace autoscale
