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

#include <autoscale/baselines.hpp>
#include <autoscale/dominance.hpp>

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <set>

namespace autoscale {

WeightedSum::WeightedSum(std::vector<Direction> directions, std::vector<double> weights)
    : directions_(std::move(directions)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(directions_.size(), 1.0);
  if (weights_.size() != directions_.size()) throw ContractViolation("weighted sum: one weight per objective");
  for (double w : weights_) {
    if (!(w >= 0.0)) throw ContractViolation("weighted sum: weights must be >= 0");
  }
  reset();
}

void WeightedSum::reset() {
  lo_.assign(directions_.size(), std::numeric_limits<double>::infinity());
  hi_.assign(directions_.size(), -std::numeric_limits<double>::infinity());
}

void WeightedSum::observe(std::span<const double> values) {
  for (std::size_t o = 0; o < values.size() && o < lo_.size(); ++o) {
    lo_[o] = std::min(lo_[o], values[o]);
    hi_[o] = std::max(hi_[o], values[o]);
  }
}

// Lower is better; each objective maps to [0, 1] with 0 at the best value seen.
double WeightedSum::score(std::span<const double> values) const {
  if (values.size() != directions_.size()) throw ContractViolation("weighted sum: wrong vector length");
  double total = 0.0;
  for (std::size_t o = 0; o < values.size(); ++o) {
    const double width = hi_[o] - lo_[o];
    if (!(width > 0.0)) continue;
    const double z = directions_[o] == Direction::Minimize ? (values[o] - lo_[o]) / width : (hi_[o] - values[o]) / width;
    total += weights_[o] * z;
  }
  return total;
}

void MogaConfig::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw ContractViolation("moga: population size must be even and >= 2");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ContractViolation("moga: crossover rate must be in [0, 1]");
  if (mutation_rate > 1.0) throw ContractViolation("moga: mutation rate must be in [0, 1]");
  if (tournament_size == 0) throw ContractViolation("moga: tournament size must be positive");
}

Decision rule_decide(const EnvironmentState& env, const Region& region, const Topology& topology, Trigger trigger) {
  if (trigger == Trigger::None) throw ContractViolation("rule_decide: no trigger");
  Decision d;
  d.values.reserve(region.num_primitives());
  for (const auto& p : region.primitives) {
    auto it = env.configuration.find(p.id);
    d.values.push_back(p.clamp_to_grid(it != env.configuration.end() ? it->second : p.initial));
  }

  if (trigger == Trigger::SlaViolation) {
    std::set<std::string> owners;  // instances and VMs whose primitives step up
    for (const auto& o : region.objectives) {
      if (o.kind == ObjectiveKind::Cost) continue;
      auto it = env.observed.find(o.id);
      if (it == env.observed.end() || !o.violated_by(it->second)) continue;
      owners.insert(o.owner);
      if (const auto* inst = topology.find_instance(o.owner)) owners.insert(inst->vm);
    }
    for (std::size_t a = 0; a < region.num_primitives(); ++a) {
      const auto& p = region.primitives[a];
      if (owners.count(p.owner)) d.values[a] = p.clamp_to_grid(d.values[a] + p.step);
    }
  } else {
    for (std::size_t a = 0; a < region.num_primitives(); ++a) {
      const auto& p = region.primitives[a];
      auto it = env.utilizations.find(p.id);
      if (it != env.utilizations.end() && it->second < p.util_trigger) d.values[a] = p.clamp_to_grid(d.values[a] - p.step);
    }
  }
  return d;
}

namespace {

using Clock = std::chrono::steady_clock;

// Counts evaluations against the shared budget and keeps everything seen so
// the final pick uses the final normalization.
class BudgetedSearch {
 public:
  BudgetedSearch(const Region& region, const RegionEvaluator& evaluator, const SearchBudget& budget)
      : region_(region), evaluator_(evaluator), budget_(budget), sum_(region.directions()), start_(Clock::now()) {
    grids_.reserve(region.num_primitives());
    for (const auto& p : region.primitives) {
      grids_.push_back(p.enumerate_grid());
      if (grids_.back().empty()) throw ContractViolation("primitive " + p.id + " has an empty grid");
    }
  }

  bool exhausted() const {
    if (seen_.size() >= budget_.max_evaluations) return true;
    return std::chrono::duration<double>(Clock::now() - start_).count() > budget_.time_budget;
  }

  const std::vector<std::vector<Value>>& grids() const { return grids_; }

  std::vector<std::size_t> random_indices(Rng& rng) const {
    std::vector<std::size_t> idx(grids_.size());
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] = uniform_index(rng, grids_[a].size());
    return idx;
  }

  // Returns the index of the stored evaluation.
  std::size_t evaluate(const std::vector<std::size_t>& idx) {
    ScoredDecision s;
    s.decision.values.resize(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) s.decision.values[a] = grids_[a][idx[a]];
    s.objective_values.resize(region_.num_objectives());
    evaluator_.evaluate(s.decision.values, s.objective_values);
    s.violation_count = region_.count_violations(s.objective_values);
    sum_.observe(s.objective_values);
    seen_.push_back(std::move(s));
    return seen_.size() - 1;
  }

  double score(std::size_t i) const { return sum_.score(seen_[i].objective_values); }

  Decision best() const {
    if (seen_.empty()) throw ContractViolation("search: budget allowed no evaluation");
    std::size_t best = 0;
    for (std::size_t i = 1; i < seen_.size(); ++i) {
      if (score(i) < score(best)) best = i;
    }
    return seen_[best].decision;
  }

 private:
  const Region& region_;
  const RegionEvaluator& evaluator_;
  SearchBudget budget_;
  WeightedSum sum_;
  Clock::time_point start_;
  std::vector<std::vector<Value>> grids_;
  std::vector<ScoredDecision> seen_;
};

}  // namespace

Decision hill_climb(const Region& region, const RegionEvaluator& evaluator, const SearchBudget& budget, Rng& rng) {
  if (budget.max_evaluations == 0) throw ContractViolation("hill_climb: empty budget");
  BudgetedSearch search(region, evaluator, budget);
  const auto& grids = search.grids();

  std::vector<std::pair<std::size_t, int>> moves;
  for (std::size_t a = 0; a < grids.size(); ++a) {
    moves.emplace_back(a, +1);
    moves.emplace_back(a, -1);
  }

  while (!search.exhausted()) {
    auto current = search.random_indices(rng);
    std::size_t current_eval = search.evaluate(current);
    bool improved = true;
    while (improved && !search.exhausted()) {
      improved = false;
      std::shuffle(moves.begin(), moves.end(), rng);
      for (const auto& [a, delta] : moves) {
        if (search.exhausted()) break;
        const auto next_index = static_cast<long long>(current[a]) + delta;
        if (next_index < 0 || next_index >= static_cast<long long>(grids[a].size())) continue;
        auto next = current;
        next[a] = static_cast<std::size_t>(next_index);
        const std::size_t e = search.evaluate(next);
        if (search.score(e) < search.score(current_eval)) {
          current = std::move(next);
          current_eval = e;
          improved = true;
          break;
        }
      }
    }
  }
  return search.best();
}

Decision random_search(const Region& region, const RegionEvaluator& evaluator, const SearchBudget& budget, Rng& rng) {
  if (budget.max_evaluations == 0) throw ContractViolation("random_search: empty budget");
  BudgetedSearch search(region, evaluator, budget);
  do {
    search.evaluate(search.random_indices(rng));
  } while (!search.exhausted());
  return search.best();
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const std::vector<double>> values,
                                                         std::span<const Direction> directions) {
  const std::size_t n = values.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::vector<std::size_t>> fronts(1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pareto_dominates(values[i], values[j], directions)) {
        dominated[i].push_back(j);
        ++count[j];
      } else if (pareto_dominates(values[j], values[i], directions)) {
        dominated[j].push_back(i);
        ++count[i];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) fronts[0].push_back(i);
  }
  while (!fronts.back().empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : fronts.back()) {
      for (std::size_t j : dominated[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

std::vector<double> crowding_distance(std::span<const std::vector<double>> values, std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  const std::size_t m = values[front[0]].size();
  std::vector<std::size_t> order(n);
  for (std::size_t o = 0; o < m; ++o) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[front[a]][o] < values[front[b]][o]; });
    const double lo = values[front[order.front()]][o];
    const double hi = values[front[order.back()]][o];
    dist[order.front()] = dist[order.back()] = std::numeric_limits<double>::infinity();
    if (!(hi > lo)) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      dist[order[k]] += (values[front[order[k + 1]]][o] - values[front[order[k - 1]]][o]) / (hi - lo);
    }
  }
  return dist;
}

namespace {

struct Individual {
  std::vector<std::size_t> genes;
  std::vector<double> objectives;
  std::size_t rank = 0;
  double crowding = 0.0;
};

// Assigns rank and crowding to every member; returns the fronts.
std::vector<std::vector<std::size_t>> rank_population(std::vector<Individual>& pop, std::span<const Direction> dirs) {
  std::vector<std::vector<double>> values;
  values.reserve(pop.size());
  for (const auto& ind : pop) values.push_back(ind.objectives);
  auto fronts = non_dominated_sort(values, dirs);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const auto crowd = crowding_distance(values, fronts[r]);
    for (std::size_t k = 0; k < fronts[r].size(); ++k) {
      pop[fronts[r][k]].rank = r;
      pop[fronts[r][k]].crowding = crowd[k];
    }
  }
  return fronts;
}

bool crowded_less(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

}  // namespace

MogaResult moga_optimize(const Region& region, const RegionEvaluator& evaluator, const MogaConfig& cfg,
                         const SearchBudget& budget, Rng& rng) {
  cfg.validate();
  if (budget.max_evaluations == 0) throw ContractViolation("moga: empty budget");
  const auto dirs = region.directions();
  const std::size_t n_genes = region.num_primitives();
  const double mutation = cfg.mutation_rate >= 0.0 ? cfg.mutation_rate : (n_genes ? 1.0 / static_cast<double>(n_genes) : 0.0);

  std::vector<std::vector<Value>> grids;
  for (const auto& p : region.primitives) {
    grids.push_back(p.enumerate_grid());
    if (grids.back().empty()) throw ContractViolation("primitive " + p.id + " has an empty grid");
  }
  const auto start = Clock::now();
  std::size_t evaluations = 0;
  auto out_of_budget = [&] {
    return evaluations >= budget.max_evaluations ||
           std::chrono::duration<double>(Clock::now() - start).count() > budget.time_budget;
  };
  std::vector<Value> scratch(n_genes);
  auto evaluate = [&](Individual& ind) {
    for (std::size_t a = 0; a < n_genes; ++a) scratch[a] = grids[a][ind.genes[a]];
    ind.objectives.resize(region.num_objectives());
    evaluator.evaluate(scratch, ind.objectives);
    ++evaluations;
  };

  std::vector<Individual> pop;
  pop.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size && (i == 0 || !out_of_budget()); ++i) {
    Individual ind;
    ind.genes.resize(n_genes);
    for (std::size_t a = 0; a < n_genes; ++a) ind.genes[a] = uniform_index(rng, grids[a].size());
    evaluate(ind);
    pop.push_back(std::move(ind));
  }
  rank_population(pop, dirs);

  auto tournament = [&]() -> const Individual& {
    const Individual* best = &pop[uniform_index(rng, pop.size())];
    for (std::size_t k = 1; k < cfg.tournament_size; ++k) {
      const Individual& other = pop[uniform_index(rng, pop.size())];
      if (crowded_less(other, *best)) best = &other;
    }
    return *best;
  };
  auto mutate = [&](Individual& ind) {
    for (std::size_t a = 0; a < n_genes; ++a) {
      if (grids[a].size() < 2 || uniform01(rng) >= mutation) continue;
      const bool up = uniform01(rng) < 0.5;
      if (up) ind.genes[a] = ind.genes[a] + 1 < grids[a].size() ? ind.genes[a] + 1 : ind.genes[a] - 1;
      else ind.genes[a] = ind.genes[a] > 0 ? ind.genes[a] - 1 : ind.genes[a] + 1;
    }
  };

  for (std::size_t gen = 0; gen < cfg.generations && !out_of_budget(); ++gen) {
    std::vector<Individual> offspring;
    while (offspring.size() < pop.size() && !out_of_budget()) {
      Individual a = tournament();
      Individual b = tournament();
      if (uniform01(rng) < cfg.crossover_rate) {
        for (std::size_t g = 0; g < n_genes; ++g) {
          if (uniform01(rng) < 0.5) std::swap(a.genes[g], b.genes[g]);
        }
      }
      mutate(a);
      mutate(b);
      evaluate(a);
      offspring.push_back(std::move(a));
      if (offspring.size() < pop.size() && !out_of_budget()) {
        evaluate(b);
        offspring.push_back(std::move(b));
      }
    }
    const std::size_t target = pop.size();
    for (auto& o : offspring) pop.push_back(std::move(o));
    const auto fronts = rank_population(pop, dirs);
    std::vector<Individual> next;
    next.reserve(target);
    for (const auto& front : fronts) {
      std::vector<std::size_t> members = front;
      if (next.size() + members.size() > target) {
        std::stable_sort(members.begin(), members.end(),
                         [&](std::size_t x, std::size_t y) { return pop[x].crowding > pop[y].crowding; });
        members.resize(target - next.size());
      }
      for (std::size_t i : members) next.push_back(pop[i]);
      if (next.size() == target) break;
    }
    pop = std::move(next);
    rank_population(pop, dirs);
  }

  MogaResult result;
  WeightedSum sum(dirs);
  for (const auto& ind : pop) {
    if (ind.rank != 0) continue;
    ScoredDecision s;
    s.decision.values.resize(n_genes);
    for (std::size_t a = 0; a < n_genes; ++a) s.decision.values[a] = grids[a][ind.genes[a]];
    s.objective_values = ind.objectives;
    s.violation_count = region.count_violations(ind.objectives);
    if (result.front.insert(std::move(s))) sum.observe(ind.objectives);
  }
  const auto& front = result.front.entries();
  std::size_t best = 0;
  for (std::size_t i = 1; i < front.size(); ++i) {
    if (sum.score(front[i].objective_values) < sum.score(front[best].objective_values)) best = i;
  }
  result.chosen = front[best];
  return result;
}

}  // namespace autoscale
