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

#ifndef AUTOSCALE_DECIDERS_HPP
#define AUTOSCALE_DECIDERS_HPP

#include <autoscale/baselines.hpp>
#include <autoscale/domain.hpp>
#include <autoscale/moaco.hpp>
#include <autoscale/qos_model.hpp>
#include <autoscale/rng.hpp>
#include <autoscale/simulator.hpp>

#include <array>
#include <optional>
#include <string>

namespace autoscale {

enum class Approach { MoacoCd, Moga, Rule, Hill, Random };

inline constexpr std::array<Approach, 5> kAllApproaches = {Approach::MoacoCd, Approach::Moga, Approach::Rule,
                                                           Approach::Hill, Approach::Random};

const char* to_string(Approach a);
std::optional<Approach> parse_approach(const std::string& s);

struct DeciderConfig {
  MoacoConfig moaco;
  MogaConfig moga;
  /// Wall-clock cap shared by every search-based decider, in seconds.
  double time_budget = 75.0;

  /// HILL and RANDOM get MOACO's worst-case evaluation count.
  SearchBudget search_budget() const;
};

struct DecisionInput {
  const EnvironmentState& env;
  const Region& region;
  const Topology& topology;
  const ClusterModel& cluster;
  Trigger trigger = Trigger::None;
};

/// Live configuration of the region's primitives, in region order.
Decision current_decision(const EnvironmentState& env, const Region& region);

Decision decide(Approach approach, const DecisionInput& input, const DeciderConfig& cfg, Rng& rng);

}  // namespace autoscale

#endif  // AUTOSCALE_DECIDERS_HPP
