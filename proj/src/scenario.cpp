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

#include <autoscale/scenario.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace autoscale {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(path + "." + key, "unknown key");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Value integer(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (std::floor(v) != v || std::abs(v) > 9.0e15) fail(path, "expected an integer");
  return static_cast<Value>(v);
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::size_t count(const json& j, const std::string& path) {
  const Value v = integer(j, path);
  if (v < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

template <typename T, typename Read>
void maybe(const json& j, const char* key, const std::string& path, T& field, Read read) {
  if (j.contains(key)) field = read(j.at(key), path + "." + key);
}

void read_primitive_fields(const json& j, const std::string& path, ControlPrimitiveSpec& p) {
  check_keys(j, path,
             {"scope", "unit", "initial", "util_trigger", "step", "min", "max", "hard_min", "hard_max",
              "adapt_threshold", "adapt_fraction", "price"});
  if (j.contains("scope")) {
    const std::string s = text(j.at("scope"), path + ".scope");
    if (s == "per-vm") p.scope = PrimitiveScope::PerVmShared;
    else if (s == "per-service") p.scope = PrimitiveScope::PerService;
    else fail(path + ".scope", "expected per-vm or per-service");
  }
  maybe(j, "unit", path, p.unit, text);
  maybe(j, "initial", path, p.initial, integer);
  maybe(j, "util_trigger", path, p.util_trigger, number);
  maybe(j, "step", path, p.step, integer);
  if (j.contains("min")) p.base_lower = p.lower_bound = integer(j.at("min"), path + ".min");
  maybe(j, "max", path, p.upper_bound, integer);
  maybe(j, "hard_min", path, p.hard_min, integer);
  maybe(j, "hard_max", path, p.hard_max, integer);
  maybe(j, "adapt_threshold", path, p.adapt_threshold, number);
  maybe(j, "adapt_fraction", path, p.adapt_fraction, number);
  maybe(j, "price", path, p.price_per_unit, number);
}

void read_model_params(const json& j, const std::string& path, ServiceModelParams& m) {
  check_keys(j, path,
             {"base_response_ms", "cpu_capacity", "thread_capacity", "memory_per_thread", "thread_penalty",
              "min_capacity", "reliability_rt_ms", "reliability_slope", "availability_rt_ms", "availability_slope",
              "cpu_base", "cpu_per_request", "memory_base", "memory_per_request", "requests_per_thread"});
  maybe(j, "base_response_ms", path, m.base_response_ms, number);
  maybe(j, "cpu_capacity", path, m.cpu_capacity, number);
  maybe(j, "thread_capacity", path, m.thread_capacity, number);
  maybe(j, "memory_per_thread", path, m.memory_per_thread, number);
  maybe(j, "thread_penalty", path, m.thread_penalty, number);
  maybe(j, "min_capacity", path, m.min_capacity, number);
  maybe(j, "reliability_rt_ms", path, m.reliability_rt_ms, number);
  maybe(j, "reliability_slope", path, m.reliability_slope, number);
  maybe(j, "availability_rt_ms", path, m.availability_rt_ms, number);
  maybe(j, "availability_slope", path, m.availability_slope, number);
  maybe(j, "cpu_base", path, m.cpu_base, number);
  maybe(j, "cpu_per_request", path, m.cpu_per_request, number);
  maybe(j, "memory_base", path, m.memory_base, number);
  maybe(j, "memory_per_request", path, m.memory_per_request, number);
  maybe(j, "requests_per_thread", path, m.requests_per_thread, number);
}

Direction default_direction(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Throughput:
    case ObjectiveKind::Reliability:
    case ObjectiveKind::Availability: return Direction::Maximize;
    default: return Direction::Minimize;
  }
}

const char* default_model(ObjectiveKind kind) {
  return kind == ObjectiveKind::Cost ? kLinearCostModel : kInterferenceQueueModel;
}

ObjectiveKind objective_kind(const json& j, const std::string& path) {
  const auto kind = parse_objective_kind(text(j, path));
  if (!kind) fail(path, "unknown objective kind");
  return *kind;
}

const json& array_at(const json& doc, const char* key) {
  const json& j = doc.at(key);
  if (!j.is_array()) fail(key, "expected an array");
  return j;
}

TraceGeneratorParams read_generator(const json& j, const std::string& path) {
  check_keys(j, path,
             {"intervals", "peak", "base_fraction", "plateau_fraction", "tail_fraction", "noise", "seed",
              "service_scale"});
  TraceGeneratorParams g;
  maybe(j, "intervals", path, g.intervals, count);
  maybe(j, "peak", path, g.peak, number);
  maybe(j, "base_fraction", path, g.base_fraction, number);
  maybe(j, "plateau_fraction", path, g.plateau_fraction, number);
  maybe(j, "tail_fraction", path, g.tail_fraction, number);
  maybe(j, "noise", path, g.noise, number);
  if (j.contains("seed")) g.seed = static_cast<std::uint64_t>(count(j.at("seed"), path + ".seed"));
  if (j.contains("service_scale")) {
    const json& s = j.at("service_scale");
    if (!s.is_object()) fail(path + ".service_scale", "expected an object");
    for (const auto& [svc, v] : s.items()) g.service_scale[svc] = number(v, path + ".service_scale." + svc);
  }
  return g;
}

Scenario from_json(const json& doc, const std::string& base_dir) {
  check_keys(doc, "scenario",
             {"name", "primitive_types", "primitive_overrides", "pms", "vms", "services", "objectives", "regions",
              "models", "moaco", "moga", "simulation", "trace", "initial_decision"});
  for (const char* key : {"name", "primitive_types", "pms", "vms", "services", "trace"}) {
    if (!doc.contains(key)) fail(key, "missing");
  }
  Scenario sc;
  sc.name = text(doc.at("name"), "name");
  sc.base_dir = base_dir;
  SimulationSetup& setup = sc.setup;

  std::map<ResourceKind, ControlPrimitiveSpec> templates;
  const json& types = doc.at("primitive_types");
  check_keys(types, "primitive_types", {"cpu", "memory", "thread"});
  for (const auto& [name, body] : types.items()) {
    ControlPrimitiveSpec t;
    t.kind = *parse_resource_kind(name);
    t.scope = t.kind == ResourceKind::Thread ? PrimitiveScope::PerService : PrimitiveScope::PerVmShared;
    read_primitive_fields(body, "primitive_types." + name, t);
    templates[t.kind] = t;
  }
  for (ResourceKind k : {ResourceKind::Cpu, ResourceKind::Memory, ResourceKind::Thread}) {
    if (!templates.count(k)) fail(std::string("primitive_types.") + to_string(k), "missing");
  }

  for (const auto& pm : array_at(doc, "pms")) {
    check_keys(pm, "pms[]", {"id", "cpu", "memory"});
    PmSpec p;
    p.id = text(pm.at("id"), "pms[].id");
    maybe(pm, "cpu", "pms." + p.id, p.cpu_capacity, number);
    maybe(pm, "memory", "pms." + p.id, p.memory_capacity, number);
    setup.topology.pms.push_back(p);
  }
  for (const auto& vm : array_at(doc, "vms")) {
    check_keys(vm, "vms[]", {"id", "pm"});
    setup.topology.vms.push_back({text(vm.at("id"), "vms[].id"), text(vm.at("pm"), "vms[].pm"), std::nullopt});
  }

  std::vector<std::pair<std::string, json>> requirements;
  for (const auto& s : array_at(doc, "services")) {
    check_keys(s, "services[]", {"id", "vm", "service", "managed", "requirements"});
    ServiceInstanceSpec inst;
    inst.id = text(s.at("id"), "services[].id");
    const std::string path = "services." + inst.id;
    inst.vm = text(s.at("vm"), path + ".vm");
    inst.service = s.contains("service") ? text(s.at("service"), path + ".service") : inst.id;
    if (s.contains("managed")) {
      if (!s.at("managed").is_boolean()) fail(path + ".managed", "expected a boolean");
      inst.managed = s.at("managed").get<bool>();
    }
    if (s.contains("requirements")) requirements.emplace_back(inst.id, s.at("requirements"));
    setup.topology.instances.push_back(std::move(inst));
  }

  // <vm>.cpu, <vm>.memory, then <instance>.thread for each instance on it.
  auto make = [&](ResourceKind kind, const std::string& owner) {
    ControlPrimitiveSpec p = templates.at(kind);
    p.owner = owner;
    p.id = owner + "." + to_string(kind);
    setup.primitives.push_back(p);
  };
  for (const auto& vm : setup.topology.vms) {
    for (ResourceKind k : {ResourceKind::Cpu, ResourceKind::Memory, ResourceKind::Thread}) {
      if (templates.at(k).scope == PrimitiveScope::PerVmShared) make(k, vm.id);
    }
    for (const auto& inst : setup.topology.instances) {
      if (inst.vm != vm.id) continue;
      for (ResourceKind k : {ResourceKind::Cpu, ResourceKind::Memory, ResourceKind::Thread}) {
        if (templates.at(k).scope == PrimitiveScope::PerService) make(k, inst.id);
      }
    }
  }
  for (const auto& inst : setup.topology.instances) {
    if (!setup.topology.find_vm(inst.vm)) fail("services." + inst.id + ".vm", "unknown VM " + inst.vm);
  }

  if (doc.contains("primitive_overrides")) {
    const json& ov = doc.at("primitive_overrides");
    if (!ov.is_object()) fail("primitive_overrides", "expected an object");
    for (const auto& [id, body] : ov.items()) {
      auto it = std::find_if(setup.primitives.begin(), setup.primitives.end(),
                             [&](const ControlPrimitiveSpec& p) { return p.id == id; });
      if (it == setup.primitives.end()) fail("primitive_overrides." + id, "unknown primitive");
      const PrimitiveScope scope = it->scope;
      read_primitive_fields(body, "primitive_overrides." + id, *it);
      if (it->scope != scope) fail("primitive_overrides." + id + ".scope", "scope cannot be overridden");
    }
  }

  if (doc.contains("objectives")) {
    for (const auto& o : array_at(doc, "objectives")) {
      check_keys(o, "objectives[]", {"id", "kind", "direction", "owner", "threshold", "model_ref"});
      ObjectiveSpec spec;
      spec.id = text(o.at("id"), "objectives[].id");
      const std::string path = "objectives." + spec.id;
      spec.kind = objective_kind(o.at("kind"), path + ".kind");
      spec.direction = default_direction(spec.kind);
      if (o.contains("direction")) {
        const std::string d = text(o.at("direction"), path + ".direction");
        if (d == "minimize") spec.direction = Direction::Minimize;
        else if (d == "maximize") spec.direction = Direction::Maximize;
        else fail(path + ".direction", "expected minimize or maximize");
      }
      spec.owner = text(o.at("owner"), path + ".owner");
      spec.threshold = number(o.at("threshold"), path + ".threshold");
      spec.model_ref = o.contains("model_ref") ? text(o.at("model_ref"), path + ".model_ref") : default_model(spec.kind);
      setup.objectives.push_back(spec);
    }
  } else {
    std::map<ObjectiveKind, std::vector<ObjectiveSpec>> by_kind;
    for (const auto& [owner, req] : requirements) {
      const std::string path = "services." + owner + ".requirements";
      if (!req.is_object()) fail(path, "expected an object");
      for (const auto& [name, threshold] : req.items()) {
        ObjectiveSpec spec;
        spec.kind = objective_kind(name, path + "." + name);
        if (spec.kind == ObjectiveKind::Custom) fail(path + ".custom", "custom objectives need an explicit entry");
        spec.id = owner + "." + name;
        spec.owner = owner;
        spec.direction = default_direction(spec.kind);
        spec.threshold = number(threshold, path + "." + name);
        spec.model_ref = default_model(spec.kind);
        by_kind[spec.kind].push_back(spec);
      }
    }
    for (auto& [_, list] : by_kind) {
      for (auto& o : list) setup.objectives.push_back(std::move(o));
    }
  }

  if (doc.contains("regions")) {
    for (const auto& r : array_at(doc, "regions")) {
      check_keys(r, "regions[]", {"id", "objectives"});
      RegionDeclaration decl;
      decl.id = text(r.at("id"), "regions[].id");
      const json& ids = r.at("objectives");
      if (!ids.is_array()) fail("regions." + decl.id + ".objectives", "expected an array");
      for (const auto& id : ids) decl.objectives.push_back(text(id, "regions." + decl.id + ".objectives[]"));
      setup.regions.push_back(std::move(decl));
    }
  } else {
    RegionDeclaration all{"all", {}};
    for (const auto& o : setup.objectives) all.objectives.push_back(o.id);
    setup.regions.push_back(std::move(all));
  }

  if (doc.contains("models")) {
    const json& m = doc.at("models");
    check_keys(m, "models", {"noise_std", "defaults", "services", "coupling", "coupling_default"});
    maybe(m, "noise_std", "models", setup.models.noise_std, number);
    maybe(m, "coupling_default", "models", setup.models.coupling_default, number);
    if (m.contains("defaults")) read_model_params(m.at("defaults"), "models.defaults", setup.models.defaults);
    if (m.contains("services")) {
      const json& s = m.at("services");
      if (!s.is_object()) fail("models.services", "expected an object");
      for (const auto& [svc, body] : s.items()) {
        ServiceModelParams p = setup.models.defaults;
        read_model_params(body, "models.services." + svc, p);
        setup.models.services[svc] = p;
      }
    }
    if (m.contains("coupling")) {
      const json& c = m.at("coupling");
      if (!c.is_array()) fail("models.coupling", "expected an array");
      for (const auto& e : c) {
        check_keys(e, "models.coupling[]", {"instance", "vm", "weight"});
        setup.models.coupling[{text(e.at("instance"), "models.coupling[].instance"),
                               text(e.at("vm"), "models.coupling[].vm")}] =
            number(e.at("weight"), "models.coupling[].weight");
      }
    }
  }

  if (doc.contains("moaco")) {
    const json& m = doc.at("moaco");
    check_keys(m, "moaco", {"alpha", "beta", "rho", "v", "max_iteration", "max_ant", "max_run", "time_budget"});
    maybe(m, "alpha", "moaco", sc.moaco.alpha, number);
    maybe(m, "beta", "moaco", sc.moaco.beta, number);
    maybe(m, "rho", "moaco", sc.moaco.rho, number);
    maybe(m, "v", "moaco", sc.moaco.v, number);
    maybe(m, "max_iteration", "moaco", sc.moaco.max_iteration, count);
    maybe(m, "max_ant", "moaco", sc.moaco.max_ant, count);
    maybe(m, "max_run", "moaco", sc.moaco.max_run, count);
    maybe(m, "time_budget", "moaco", sc.moaco.time_budget, number);
  }
  if (doc.contains("moga")) {
    const json& m = doc.at("moga");
    check_keys(m, "moga", {"population_size", "generations", "crossover_rate", "mutation_rate", "tournament_size"});
    maybe(m, "population_size", "moga", sc.moga.population_size, count);
    maybe(m, "generations", "moga", sc.moga.generations, count);
    maybe(m, "crossover_rate", "moga", sc.moga.crossover_rate, number);
    maybe(m, "mutation_rate", "moga", sc.moga.mutation_rate, number);
    maybe(m, "tournament_size", "moga", sc.moga.tournament_size, count);
  }
  if (doc.contains("simulation")) {
    const json& s = doc.at("simulation");
    check_keys(s, "simulation", {"max_replicas_per_vm"});
    maybe(s, "max_replicas_per_vm", "simulation", setup.max_replicas_per_vm, count);
  }

  const json& trace = doc.at("trace");
  check_keys(trace, "trace", {"path", "generator"});
  if (trace.contains("path")) sc.trace.path = text(trace.at("path"), "trace.path");
  if (trace.contains("generator")) {
    TraceGeneratorParams g = read_generator(trace.at("generator"), "trace.generator");
    if (g.service_scale.empty()) {
      for (const auto& inst : setup.topology.instances) g.service_scale[inst.service] = 1.0;
    }
    sc.trace.generator = g;
  }

  if (doc.contains("initial_decision")) {
    const json& d = doc.at("initial_decision");
    if (!d.is_object()) fail("initial_decision", "expected an object");
    for (const auto& [id, v] : d.items()) sc.initial_decision[id] = number(v, "initial_decision." + id);
  }
  return sc;
}

template <typename Items, typename Id>
void check_unique(const Items& items, Id id, const std::string& what, std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (!seen.insert(id(item)).second) out.push_back({what + "." + id(item), "duplicate " + what + " id"});
  }
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    return from_json(doc, base_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario(buf.str(), dir.empty() ? "." : dir.string());
}

std::vector<Violation> validate_scenario(const Scenario& sc) {
  std::vector<Violation> out;
  const SimulationSetup& setup = sc.setup;
  const Topology& topo = setup.topology;
  auto add = [&](std::string path, std::string msg) { out.push_back({std::move(path), std::move(msg)}); };

  if (sc.name.empty()) add("name", "scenario name is empty");

  check_unique(topo.pms, [](const PmSpec& p) { return p.id; }, "pms", out);
  check_unique(topo.vms, [](const VmSpec& v) { return v.id; }, "vms", out);
  check_unique(topo.instances, [](const ServiceInstanceSpec& s) { return s.id; }, "services", out);
  check_unique(setup.primitives, [](const ControlPrimitiveSpec& p) { return p.id; }, "primitives", out);
  check_unique(setup.objectives, [](const ObjectiveSpec& o) { return o.id; }, "objectives", out);
  check_unique(setup.regions, [](const RegionDeclaration& r) { return r.id; }, "regions", out);

  for (const auto& pm : topo.pms) {
    if (!(pm.cpu_capacity > 0.0 && pm.memory_capacity > 0.0)) add("pms." + pm.id, "capacities must be positive");
  }
  for (const auto& vm : topo.vms) {
    if (!topo.find_pm(vm.pm)) add("vms." + vm.id + ".pm", "unknown PM " + vm.pm);
  }
  for (const auto& s : topo.instances) {
    if (!topo.find_vm(s.vm)) add("services." + s.id + ".vm", "unknown VM " + s.vm);
    if (s.service.empty()) add("services." + s.id + ".service", "logical service is empty");
  }

  for (const auto& p : setup.primitives) {
    for (auto& v : validate_primitive(p, "primitives." + p.id)) out.push_back(std::move(v));
    const bool vm_kind = p.kind != ResourceKind::Thread;
    if (vm_kind != (p.scope == PrimitiveScope::PerVmShared)) {
      add("primitives." + p.id + ".scope", p.id + ": cpu and memory are per-vm, thread is per-service");
    }
  }

  std::set<std::string> objective_ids;
  for (const auto& o : setup.objectives) {
    const std::string path = "objectives." + o.id;
    objective_ids.insert(o.id);
    if (!topo.find_instance(o.owner)) add(path + ".owner", "unknown service instance " + o.owner);
    if (!std::isfinite(o.threshold)) add(path + ".threshold", "threshold must be finite");
    else if (o.threshold == 0.0) add(path + ".threshold", "threshold must be non-zero");
    if (o.kind == ObjectiveKind::Cost && o.direction != Direction::Minimize) {
      add(path + ".direction", "cost objectives are minimized against a budget");
    }
    if (!setup.models.knows(o.model_ref, o.kind)) {
      add(path + ".model_ref", "unknown model_ref '" + o.model_ref + "' for " + to_string(o.kind));
    }
  }
  if (setup.objectives.empty()) add("objectives", "no objectives declared");

  if (setup.regions.empty()) add("regions", "no regions declared");
  for (const auto& r : setup.regions) {
    if (r.objectives.empty()) add("regions." + r.id, "region has no objectives");
    for (const auto& id : r.objectives) {
      if (!objective_ids.count(id)) add("regions." + r.id + ".objectives", "unknown objective " + id);
    }
  }

  for (const auto& [id, value] : sc.initial_decision) {
    auto it = std::find_if(setup.primitives.begin(), setup.primitives.end(),
                           [&](const ControlPrimitiveSpec& p) { return p.id == id; });
    if (it == setup.primitives.end()) {
      add("initial_decision." + id, "unknown primitive");
      continue;
    }
    Region single{"initial", {}, {*it}};
    for (auto& v : validate_decision(single, std::map<std::string, double>{{id, value}})) {
      v.path = "initial_decision." + id;
      out.push_back(std::move(v));
    }
  }

  const ModelSet& m = setup.models;
  if (!(m.noise_std >= 0.0 && std::isfinite(m.noise_std))) add("models.noise_std", "must be a finite value >= 0");
  if (!(m.coupling_default >= 0.0)) add("models.coupling_default", "must be >= 0");
  for (const auto& [key, w] : m.coupling) {
    if (!(w >= 0.0)) add("models.coupling", key.first + "/" + key.second + ": weight must be >= 0");
  }
  auto check_params = [&](const ServiceModelParams& p, const std::string& path) {
    if (!(p.base_response_ms > 0.0)) add(path + ".base_response_ms", "must be positive");
    if (!(p.min_capacity > 0.0)) add(path + ".min_capacity", "must be positive");
    if (!(p.requests_per_thread > 0.0)) add(path + ".requests_per_thread", "must be positive");
    if (p.cpu_capacity < 0.0 || p.thread_capacity < 0.0 || p.thread_penalty < 0.0 || p.memory_per_thread < 0.0) {
      add(path, "capacity coefficients must be >= 0");
    }
  };
  check_params(m.defaults, "models.defaults");
  for (const auto& [svc, p] : m.services) check_params(p, "models.services." + svc);

  try {
    sc.moaco.validate();
  } catch (const ContractViolation& e) {
    add("moaco", e.what());
  }
  try {
    sc.moga.validate();
  } catch (const ContractViolation& e) {
    add("moga", e.what());
  }

  if (sc.trace.path.has_value() == sc.trace.generator.has_value()) {
    add("trace", "declare exactly one of path or generator");
  }
  if (sc.trace.generator) {
    const auto& g = *sc.trace.generator;
    if (g.intervals < 2) add("trace.generator.intervals", "need at least 2 intervals");
    if (!(g.peak >= 0.0)) add("trace.generator.peak", "must be >= 0");
    if (!(g.noise >= 0.0)) add("trace.generator.noise", "must be >= 0");
    for (const auto& s : scenario_services(sc)) {
      if (!g.service_scale.count(s)) add("trace.generator.service_scale", "no scale for service " + s);
    }
  }
  return out;
}

SimulationSetup simulation_setup(const Scenario& sc) {
  SimulationSetup setup = sc.setup;
  for (const auto& [id, v] : sc.initial_decision) setup.initial_configuration[id] = static_cast<Value>(v);
  return setup;
}

std::vector<std::string> scenario_services(const Scenario& sc) {
  std::set<std::string> ids;
  for (const auto& s : sc.setup.topology.instances) ids.insert(s.service);
  return {ids.begin(), ids.end()};
}

Trace scenario_trace(const Scenario& sc, const std::optional<std::string>& override_path) {
  Trace trace;
  if (override_path) {
    trace = Trace::read_csv_file(*override_path);
  } else if (sc.trace.path) {
    std::filesystem::path p(*sc.trace.path);
    if (p.is_relative()) p = std::filesystem::path(sc.base_dir) / p;
    trace = Trace::read_csv_file(p.string());
  } else if (sc.trace.generator) {
    trace = generate_trace(*sc.trace.generator);
  } else {
    throw ConfigError("scenario " + sc.name + " names no trace");
  }
  for (const auto& s : scenario_services(sc)) {
    if (!trace.has_service(s)) throw ConfigError("trace has no series for service " + s);
  }
  return trace;
}

}  // namespace autoscale
