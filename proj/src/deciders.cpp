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

#include <autoscale/deciders.hpp>
#include <autoscale/dominance.hpp>

namespace autoscale {

const char* to_string(Approach a) {
  switch (a) {
    case Approach::MoacoCd: return "moaco-cd";
    case Approach::Moga: return "moga";
    case Approach::Rule: return "rule";
    case Approach::Hill: return "hill";
    case Approach::Random: return "random";
  }
  return "?";
}

std::optional<Approach> parse_approach(const std::string& s) {
  for (Approach a : kAllApproaches) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

SearchBudget DeciderConfig::search_budget() const {
  SearchBudget b;
  b.max_evaluations = moaco.max_iteration * moaco.max_ant * moaco.max_run;
  b.time_budget = time_budget;
  return b;
}

Decision current_decision(const EnvironmentState& env, const Region& region) {
  Decision d;
  d.values.reserve(region.num_primitives());
  for (const auto& p : region.primitives) {
    auto it = env.configuration.find(p.id);
    d.values.push_back(it == env.configuration.end() ? p.initial : it->second);
  }
  return d;
}

Decision decide(Approach approach, const DecisionInput& in, const DeciderConfig& cfg, Rng& rng) {
  if (in.trigger == Trigger::None) throw ContractViolation("decide: nothing triggered a decision");
  if (approach == Approach::Rule) return rule_decide(in.env, in.region, in.topology, in.trigger);

  const ModelRegionEvaluator evaluator(in.cluster, in.region);
  switch (approach) {
    case Approach::MoacoCd: {
      MoacoConfig mc = cfg.moaco;
      mc.time_budget = cfg.time_budget;
      const DecisionArchive archive = optimize(in.region, evaluator, current_decision(in.env, in.region), mc, rng);
      return select_compromise(archive, in.region, rng).decision;
    }
    case Approach::Moga: return moga_optimize(in.region, evaluator, cfg.moga, cfg.search_budget(), rng).chosen.decision;
    case Approach::Hill: return hill_climb(in.region, evaluator, cfg.search_budget(), rng);
    case Approach::Random: return random_search(in.region, evaluator, cfg.search_budget(), rng);
    case Approach::Rule: break;
  }
  throw ContractViolation("decide: unknown approach");
}

}  // namespace autoscale
