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

#ifndef AUTOSCALE_MOACO_HPP
#define AUTOSCALE_MOACO_HPP

#include <autoscale/archive.hpp>
#include <autoscale/domain.hpp>
#include <autoscale/qos_model.hpp>
#include <autoscale/rng.hpp>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace autoscale {

/// Multi-objective ant colony parameters. Defaults are the reference
/// settings used for the 30-objective RUBiS experiment.
struct MoacoConfig {
  double alpha = 4.0;
  double beta = 1.0;
  double rho = 0.1;
  double v = 0.5;
  std::size_t max_iteration = 5;
  std::size_t max_ant = 150;
  std::size_t max_run = 100;
  double time_budget = 75.0;  // seconds

  /// Throws ContractViolation when a field is outside its domain.
  void validate() const;
};

inline constexpr double kSingularityEpsilon = 1e-9;

/// Aggregated heuristic desirability per (primitive, grid index).
struct HeuristicField {
  std::vector<std::vector<double>> values;

  double at(std::size_t a, std::size_t x) const { return values[a][x]; }
};

/// Per-objective pheromone trails over (primitive, grid index) with the
/// MAX-MIN bounds of each objective.
class PheromoneField {
 public:
  PheromoneField() = default;
  /// Trails start at 1.0 with bounds [v, 1].
  PheromoneField(std::size_t objectives, std::span<const std::size_t> grid_sizes, double v);

  std::size_t num_objectives() const { return trails_.size(); }
  double trail(std::size_t o, std::size_t a, std::size_t x) const { return trails_[o][a][x]; }
  double& trail(std::size_t o, std::size_t a, std::size_t x) { return trails_[o][a][x]; }
  std::span<const double> trails(std::size_t o, std::size_t a) const { return trails_[o][a]; }
  double tau_max(std::size_t o) const { return tau_max_[o]; }
  double tau_min(std::size_t o) const { return tau_min_[o]; }
  void set_bounds(std::size_t o, double tau_min, double tau_max);
  /// Clamp every trail of objective `o` into [tau_min, tau_max].
  void clamp(std::size_t o);
  std::size_t num_primitives() const { return trails_.empty() ? 0 : trails_[0].size(); }

 private:
  std::vector<std::vector<std::vector<double>>> trails_;
  std::vector<double> tau_max_;
  std::vector<double> tau_min_;
};

/// Heuristic desirability of one candidate value given its summed
/// improvements and degradations across objectives.
double aggregate_heuristic(double total_improvement, double total_degradation, double eta_min);

/// Normalized improvement and degradation of `candidate` against `current`.
struct ChangeScore {
  double improvement = 0.0;
  double degradation = 0.0;
};
ChangeScore score_change(double candidate, double current, Direction dir);

HeuristicField compute_heuristics(const Region& region, const RegionEvaluator& evaluator,
                                  const Decision& current);

/// Selection probabilities over the grid of primitive `a` for an ant
/// optimizing objective `o`.
std::vector<double> selection_probabilities(std::size_t o, std::size_t a, const PheromoneField& pheromone,
                                            const HeuristicField& heuristic, const MoacoConfig& cfg);

/// Samples a grid index with the probabilities above.
std::size_t select_value(std::size_t o, std::size_t a, const PheromoneField& pheromone,
                         const HeuristicField& heuristic, const MoacoConfig& cfg, Rng& rng);

struct AntResult {
  ScoredDecision scored;
  std::size_t runs_used = 0;
};

AntResult ant_construct(std::size_t o, const Region& region, const PheromoneField& pheromone,
                        const HeuristicField& heuristic, const RegionEvaluator& evaluator,
                        const MoacoConfig& cfg, Rng& rng);

/// Pheromone deposited on the iteration-best decision's values.
double deposit_amount(double h_best, double h_global_best, Direction dir);

/// Evaporates objective `o` and deposits on the grid indices of `best`.
void deposit(PheromoneField& pheromone, std::size_t o, std::span<const std::size_t> best_indices,
             double h_best, double h_global_best, Direction dir, double rho);

/// Tau-max from the iteration best; tau-min = v * tau-max.
std::pair<double, double> pheromone_bounds(double h_best, Direction dir, double rho, double v);

void update_bounds(PheromoneField& pheromone, std::size_t o, double h_best, Direction dir, double rho,
                   double v);

/// Read-only view handed to the observer after each iteration.
struct IterationSnapshot {
  std::size_t iteration = 0;
  const PheromoneField* pheromone = nullptr;
  const HeuristicField* heuristic = nullptr;
  std::span<const double> global_best;  // per objective
};

struct OptimizeHooks {
  std::function<void(const IterationSnapshot&)> on_iteration;
  /// Split wall-clock accounting for the two phases of the search.
  double* heuristic_seconds = nullptr;
  double* construction_seconds = nullptr;
};

DecisionArchive optimize(const Region& region, const RegionEvaluator& evaluator, const Decision& current,
                         const MoacoConfig& cfg, Rng& rng, const OptimizeHooks* hooks = nullptr);

/// Grid index of each value in `d` (values must be on grid).
std::vector<std::size_t> grid_indices(const Region& region, const Decision& d);
Decision decision_from_indices(const Region& region, std::span<const std::size_t> indices);

}  // namespace autoscale

#endif  // AUTOSCALE_MOACO_HPP
