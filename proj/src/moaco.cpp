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

#include <autoscale/moaco.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

namespace autoscale {

void MoacoConfig::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ContractViolation("moaco: alpha and beta must be >= 0");
  if (!(rho > 0.0 && rho < 1.0)) throw ContractViolation("moaco: rho must be in (0, 1)");
  if (!(v > 0.0 && v <= 1.0)) throw ContractViolation("moaco: v must be in (0, 1]");
  if (max_iteration == 0 || max_ant == 0 || max_run == 0) {
    throw ContractViolation("moaco: max_iteration, max_ant and max_run must be positive");
  }
  if (!(time_budget > 0.0)) throw ContractViolation("moaco: time budget must be positive");
}

PheromoneField::PheromoneField(std::size_t objectives, std::span<const std::size_t> grid_sizes, double v)
    : tau_max_(objectives, 1.0), tau_min_(objectives, v) {
  trails_.resize(objectives);
  for (auto& per_objective : trails_) {
    per_objective.reserve(grid_sizes.size());
    for (std::size_t n : grid_sizes) per_objective.emplace_back(n, 1.0);
  }
}

void PheromoneField::set_bounds(std::size_t o, double tau_min, double tau_max) {
  tau_min_[o] = tau_min;
  tau_max_[o] = tau_max;
}

void PheromoneField::clamp(std::size_t o) {
  for (auto& row : trails_[o]) {
    for (double& t : row) t = std::clamp(t, tau_min_[o], tau_max_[o]);
  }
}

double aggregate_heuristic(double total_improvement, double total_degradation, double eta_min) {
  if (total_improvement != 0.0) return total_improvement / (1.0 + total_degradation);
  return eta_min / (1.0 + total_degradation);
}

ChangeScore score_change(double candidate, double current, Direction dir) {
  ChangeScore s;
  const double rel = std::abs(candidate - current) / std::max(std::abs(current), kSingularityEpsilon);
  if (better(candidate, current, dir)) {
    s.improvement = rel;
  } else if (better(current, candidate, dir)) {
    s.degradation = rel;
  }
  return s;
}

HeuristicField compute_heuristics(const Region& region, const RegionEvaluator& evaluator,
                                  const Decision& current) {
  const std::size_t m = region.num_objectives();
  const auto dirs = region.directions();
  std::vector<double> base(m);
  evaluator.evaluate(current.values, base);

  struct Totals {
    double improvement = 0.0;
    double degradation = 0.0;
  };
  std::vector<std::vector<Totals>> totals(region.num_primitives());
  std::vector<double> out(m);
  Decision candidate = current;
  for (std::size_t a = 0; a < region.num_primitives(); ++a) {
    const auto grid = region.primitives[a].enumerate_grid();
    totals[a].resize(grid.size());
    for (std::size_t x = 0; x < grid.size(); ++x) {
      candidate.values[a] = grid[x];
      evaluator.evaluate(candidate.values, out);
      for (std::size_t o = 0; o < m; ++o) {
        const ChangeScore s = score_change(out[o], base[o], dirs[o]);
        totals[a][x].improvement += s.improvement;
        totals[a][x].degradation += s.degradation;
      }
    }
    candidate.values[a] = current.values[a];
  }

  // eta_min: smallest non-zero heuristic of the primitive, else of the
  // region, else 1.
  constexpr double kNone = std::numeric_limits<double>::infinity();
  std::vector<double> per_primitive_min(totals.size(), kNone);
  double global_min = kNone;
  for (std::size_t a = 0; a < totals.size(); ++a) {
    for (const auto& t : totals[a]) {
      if (t.improvement == 0.0) continue;
      const double eta = t.improvement / (1.0 + t.degradation);
      per_primitive_min[a] = std::min(per_primitive_min[a], eta);
      global_min = std::min(global_min, eta);
    }
  }

  HeuristicField field;
  field.values.resize(totals.size());
  for (std::size_t a = 0; a < totals.size(); ++a) {
    const double eta_min = per_primitive_min[a] != kNone ? per_primitive_min[a] : (global_min != kNone ? global_min : 1.0);
    field.values[a].reserve(totals[a].size());
    for (const auto& t : totals[a]) field.values[a].push_back(aggregate_heuristic(t.improvement, t.degradation, eta_min));
  }
  return field;
}

namespace {

double selection_weight(double tau, double eta, const MoacoConfig& cfg) {
  return std::pow(tau, cfg.alpha) * std::pow(eta, cfg.beta);
}

// Cumulative selection weights of every (objective, primitive) pair for one
// iteration; ants only read it.
class SelectionTable {
 public:
  SelectionTable(const PheromoneField& pheromone, const HeuristicField& heuristic, const MoacoConfig& cfg) {
    cumulative_.resize(pheromone.num_objectives());
    for (std::size_t o = 0; o < pheromone.num_objectives(); ++o) {
      cumulative_[o].resize(heuristic.values.size());
      for (std::size_t a = 0; a < heuristic.values.size(); ++a) {
        auto& cum = cumulative_[o][a];
        cum.resize(heuristic.values[a].size());
        double acc = 0.0;
        for (std::size_t x = 0; x < cum.size(); ++x) {
          acc += selection_weight(pheromone.trail(o, a, x), heuristic.at(a, x), cfg);
          cum[x] = acc;
        }
      }
    }
  }

  std::size_t sample(std::size_t o, std::size_t a, Rng& rng) const {
    const auto& cum = cumulative_[o][a];
    if (cum.size() == 1) return 0;
    const double r = uniform01(rng) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), r);
    return it == cum.end() ? cum.size() - 1 : static_cast<std::size_t>(it - cum.begin());
  }

 private:
  std::vector<std::vector<std::vector<double>>> cumulative_;
};

bool better_for(std::size_t o, const ScoredDecision& a, const ScoredDecision& b, Direction dir) {
  if (better(a.objective_values[o], b.objective_values[o], dir)) return true;
  if (better(b.objective_values[o], a.objective_values[o], dir)) return false;
  return a.violation_count < b.violation_count;
}

template <typename Sampler>
AntResult construct_with(std::size_t o, const Region& region, const std::vector<std::vector<Value>>& grids,
                         const RegionEvaluator& evaluator, const MoacoConfig& cfg, Sampler&& sample) {
  const Direction dir = region.objectives[o].direction;
  AntResult result;
  ScoredDecision attempt;
  attempt.decision.values.resize(region.num_primitives());
  attempt.objective_values.resize(region.num_objectives());
  for (std::size_t run = 0; run < cfg.max_run; ++run) {
    for (std::size_t a = 0; a < grids.size(); ++a) attempt.decision.values[a] = grids[a][sample(a)];
    evaluator.evaluate(attempt.decision.values, attempt.objective_values);
    attempt.violation_count = region.count_violations(attempt.objective_values);
    result.runs_used = run + 1;
    if (run == 0 || better_for(o, attempt, result.scored, dir)) result.scored = attempt;
    if (attempt.violation_count == 0) {
      result.scored = attempt;
      break;
    }
  }
  return result;
}

std::vector<std::vector<Value>> region_grids(const Region& region) {
  std::vector<std::vector<Value>> grids;
  grids.reserve(region.num_primitives());
  for (const auto& p : region.primitives) {
    grids.push_back(p.enumerate_grid());
    if (grids.back().empty()) throw ContractViolation("primitive " + p.id + " has an empty grid");
  }
  return grids;
}

}  // namespace

std::vector<double> selection_probabilities(std::size_t o, std::size_t a, const PheromoneField& pheromone,
                                            const HeuristicField& heuristic, const MoacoConfig& cfg) {
  const auto trails = pheromone.trails(o, a);
  std::vector<double> p(trails.size());
  double total = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    p[x] = selection_weight(trails[x], heuristic.at(a, x), cfg);
    total += p[x];
  }
  for (double& v : p) v /= total;
  return p;
}

std::size_t select_value(std::size_t o, std::size_t a, const PheromoneField& pheromone,
                         const HeuristicField& heuristic, const MoacoConfig& cfg, Rng& rng) {
  const auto p = selection_probabilities(o, a, pheromone, heuristic, cfg);
  if (p.empty()) throw ContractViolation("select_value: empty grid");
  if (p.size() == 1) return 0;
  double r = uniform01(rng);
  for (std::size_t x = 0; x + 1 < p.size(); ++x) {
    if (r < p[x]) return x;
    r -= p[x];
  }
  return p.size() - 1;
}

AntResult ant_construct(std::size_t o, const Region& region, const PheromoneField& pheromone,
                        const HeuristicField& heuristic, const RegionEvaluator& evaluator,
                        const MoacoConfig& cfg, Rng& rng) {
  const auto grids = region_grids(region);
  return construct_with(o, region, grids, evaluator, cfg,
                        [&](std::size_t a) { return select_value(o, a, pheromone, heuristic, cfg, rng); });
}

double deposit_amount(double h_best, double h_global_best, Direction dir) {
  double delta = 0.0;
  if (dir == Direction::Maximize) {
    const double hb = std::max(h_best, kSingularityEpsilon);
    const double hg = std::max(h_global_best, kSingularityEpsilon);
    delta = 1.0 / (1.0 + 1.0 / hb - 1.0 / hg);
  } else {
    delta = 1.0 / (1.0 + h_best - h_global_best);
  }
  if (!std::isfinite(delta)) return 0.0;
  return std::clamp(delta, 0.0, 1.0);
}

void deposit(PheromoneField& pheromone, std::size_t o, std::span<const std::size_t> best_indices, double h_best,
             double h_global_best, Direction dir, double rho) {
  for (std::size_t a = 0; a < pheromone.num_primitives(); ++a) {
    const std::size_t n = pheromone.trails(o, a).size();
    for (std::size_t x = 0; x < n; ++x) pheromone.trail(o, a, x) *= (1.0 - rho);
  }
  const double delta = deposit_amount(h_best, h_global_best, dir);
  for (std::size_t a = 0; a < best_indices.size(); ++a) pheromone.trail(o, a, best_indices[a]) += delta;
}

std::pair<double, double> pheromone_bounds(double h_best, Direction dir, double rho, double v) {
  const double h = std::max(h_best, kSingularityEpsilon);
  const double tau_max = dir == Direction::Maximize ? h / (1.0 - rho) : 1.0 / (h * (1.0 - rho));
  return {v * tau_max, tau_max};
}

void update_bounds(PheromoneField& pheromone, std::size_t o, double h_best, Direction dir, double rho, double v) {
  const auto [lo, hi] = pheromone_bounds(h_best, dir, rho, v);
  pheromone.set_bounds(o, lo, hi);
  pheromone.clamp(o);
}

std::vector<std::size_t> grid_indices(const Region& region, const Decision& d) {
  std::vector<std::size_t> idx(d.values.size());
  for (std::size_t a = 0; a < d.values.size(); ++a) {
    const auto& p = region.primitives[a];
    if (!p.on_grid(d.values[a])) throw ContractViolation("value of " + p.id + " is not on its grid");
    idx[a] = static_cast<std::size_t>((d.values[a] - p.lower_bound) / p.step);
  }
  return idx;
}

Decision decision_from_indices(const Region& region, std::span<const std::size_t> indices) {
  Decision d;
  d.values.resize(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    const auto& p = region.primitives[a];
    d.values[a] = p.lower_bound + static_cast<Value>(indices[a]) * p.step;
  }
  return d;
}

DecisionArchive optimize(const Region& region, const RegionEvaluator& evaluator, const Decision& current,
                         const MoacoConfig& cfg, Rng& rng, const OptimizeHooks* hooks) {
  using Clock = std::chrono::steady_clock;
  cfg.validate();
  const std::size_t m = region.num_objectives();
  if (m == 0) throw ContractViolation("optimize: region has no objectives");
  if (current.values.size() != region.num_primitives()) {
    throw ContractViolation("optimize: current configuration does not cover the region");
  }
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const auto grids = region_grids(region);
  const auto dirs = region.directions();
  const HeuristicField heuristic = compute_heuristics(region, evaluator, current);
  const double heuristic_done = elapsed();
  if (hooks && hooks->heuristic_seconds) *hooks->heuristic_seconds = heuristic_done;

  std::vector<std::size_t> sizes;
  for (const auto& g : grids) sizes.push_back(g.size());
  PheromoneField pheromone(m, sizes, cfg.v);

  DecisionArchive archive;
  std::vector<double> global_best(m);
  std::vector<bool> has_global(m, false);
  std::size_t ant_counter = 0;
  bool out_of_time = false;

  for (std::size_t it = 0; it < cfg.max_iteration && !out_of_time; ++it) {
    const SelectionTable table(pheromone, heuristic, cfg);
    std::vector<std::optional<ScoredDecision>> iteration_best(m);

    for (std::size_t ant = 0; ant < cfg.max_ant; ++ant) {
      const std::size_t o = ant_counter++ % m;
      AntResult r = construct_with(o, region, grids, evaluator, cfg,
                                   [&](std::size_t a) { return table.sample(o, a, rng); });
      auto& best = iteration_best[o];
      if (!best || better_for(o, r.scored, *best, dirs[o])) best = r.scored;
      archive.insert(std::move(r.scored));
      if (elapsed() > cfg.time_budget) {
        out_of_time = true;
        break;
      }
    }

    for (std::size_t o = 0; o < m; ++o) {
      if (!iteration_best[o]) continue;
      const double h = iteration_best[o]->objective_values[o];
      if (!has_global[o] || better(h, global_best[o], dirs[o])) {
        global_best[o] = h;
        has_global[o] = true;
      }
    }

    for (std::size_t o = 0; o < m; ++o) {
      if (!iteration_best[o]) continue;
      const double h = iteration_best[o]->objective_values[o];
      update_bounds(pheromone, o, h, dirs[o], cfg.rho, cfg.v);
      const auto idx = grid_indices(region, iteration_best[o]->decision);
      deposit(pheromone, o, idx, h, global_best[o], dirs[o], cfg.rho);
      pheromone.clamp(o);
    }

    if (hooks && hooks->on_iteration) hooks->on_iteration({it, &pheromone, &heuristic, global_best});
  }

  if (hooks && hooks->construction_seconds) *hooks->construction_seconds = elapsed() - heuristic_done;
  return archive;
}

}  // namespace autoscale
