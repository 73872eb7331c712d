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

#ifndef AUTOSCALE_SCENARIO_HPP
#define AUTOSCALE_SCENARIO_HPP

#include <autoscale/baselines.hpp>
#include <autoscale/domain.hpp>
#include <autoscale/moaco.hpp>
#include <autoscale/simulator.hpp>
#include <autoscale/trace.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace autoscale {

struct TraceSource {
  std::optional<std::string> path;  // resolved against the scenario's directory
  std::optional<TraceGeneratorParams> generator;
};

/// Everything one scenario document declares.
struct Scenario {
  std::string name;
  std::string base_dir;
  SimulationSetup setup;
  MoacoConfig moaco;
  MogaConfig moga;
  TraceSource trace;
  /// Raw values so that off-grid entries can be reported instead of rejected.
  std::map<std::string, double> initial_decision;
};

/// Throws ConfigError when the document is not shaped like a scenario
/// (bad JSON, wrong value types, unknown enum names).
Scenario parse_scenario(std::string_view json_text, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

/// One entry per broken invariant; empty when the scenario is usable.
std::vector<Violation> validate_scenario(const Scenario& scenario);

/// Setup with `initial_decision` folded into the interval-0 configuration.
SimulationSetup simulation_setup(const Scenario& scenario);

/// Trace named by the scenario, or by `override_path` when given.
Trace scenario_trace(const Scenario& scenario, const std::optional<std::string>& override_path = std::nullopt);

/// Logical service ids of the topology, sorted.
std::vector<std::string> scenario_services(const Scenario& scenario);

}  // namespace autoscale

#endif  // AUTOSCALE_SCENARIO_HPP
