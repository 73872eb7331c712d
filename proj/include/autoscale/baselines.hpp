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

#ifndef AUTOSCALE_BASELINES_HPP
#define AUTOSCALE_BASELINES_HPP

#include <autoscale/archive.hpp>
#include <autoscale/domain.hpp>
#include <autoscale/qos_model.hpp>
#include <autoscale/rng.hpp>
#include <autoscale/simulator.hpp>

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace autoscale {

/// Weighted sum over objectives normalized by the running min/max seen so
/// far. Lower scores are better for every direction.
class WeightedSum {
 public:
  explicit WeightedSum(std::vector<Direction> directions, std::vector<double> weights = {});

  void observe(std::span<const double> values);
  double score(std::span<const double> values) const;
  void reset();

 private:
  std::vector<Direction> directions_;
  std::vector<double> weights_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

struct SearchBudget {
  std::size_t max_evaluations = 75000;
  double time_budget = 75.0;  // seconds
};

struct MogaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 50;
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;  // negative: 1 / number of genes
  std::size_t tournament_size = 2;

  void validate() const;
};

/// Threshold-driven rule: a QoS breach raises every primitive of the
/// breaching service one grid notch, low utilization lowers the
/// under-used primitives one notch.
Decision rule_decide(const EnvironmentState& env, const Region& region, const Topology& topology,
                     Trigger trigger);

Decision hill_climb(const Region& region, const RegionEvaluator& evaluator, const SearchBudget& budget,
                    Rng& rng);

Decision random_search(const Region& region, const RegionEvaluator& evaluator, const SearchBudget& budget,
                       Rng& rng);

struct MogaResult {
  DecisionArchive front;
  ScoredDecision chosen;
};

/// NSGA-II over integer grid-index chromosomes. `budget.time_budget` stops
/// the generation loop early.
MogaResult moga_optimize(const Region& region, const RegionEvaluator& evaluator, const MogaConfig& cfg,
                         const SearchBudget& budget, Rng& rng);

/// Fronts of a fast non-dominated sort (indices into `values`).
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const std::vector<double>> values,
                                                         std::span<const Direction> directions);
std::vector<double> crowding_distance(std::span<const std::vector<double>> values,
                                      std::span<const std::size_t> front);

}  // namespace autoscale

#endif  // AUTOSCALE_BASELINES_HPP
