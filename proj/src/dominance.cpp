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

#include <autoscale/dominance.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace autoscale {
namespace {

constexpr double kDistanceTolerance = 1e-12;

void check_lengths(std::span<const double> a, std::span<const double> b, std::span<const Direction> dirs) {
  if (a.size() != b.size() || a.size() != dirs.size()) {
    throw ContractViolation("dominance: objective vectors and directions differ in length");
  }
}

// Objectives in which `a` beats `b` and vice versa.
std::pair<std::size_t, std::size_t> better_counts(std::span<const double> a, std::span<const double> b,
                                                  std::span<const Direction> dirs) {
  check_lengths(a, b, dirs);
  std::size_t a_wins = 0;
  std::size_t b_wins = 0;
  for (std::size_t o = 0; o < a.size(); ++o) {
    if (better(a[o], b[o], dirs[o])) ++a_wins;
    else if (better(b[o], a[o], dirs[o])) ++b_wins;
  }
  return {a_wins, b_wins};
}

bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> dirs,
               Relation relation) {
  return relation == Relation::Pareto ? pareto_dominates(a, b, dirs) : nash_dominates(a, b, dirs);
}

template <typename Get>
std::vector<std::size_t> rank_impl(std::size_t n, Get&& get, std::span<const Direction> dirs, Relation relation) {
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(get(i), get(j), dirs, relation)) ++rank[j];
      else if (dominates(get(j), get(i), dirs, relation)) ++rank[i];
    }
  }
  return rank;
}

std::vector<std::size_t> keep_min(const std::vector<std::size_t>& members, const std::vector<std::size_t>& key) {
  const std::size_t lowest = *std::min_element(key.begin(), key.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (key[i] == lowest) out.push_back(members[i]);
  }
  return out;
}

std::vector<ScoredDecision> gather(std::span<const ScoredDecision> all, const std::vector<std::size_t>& idx) {
  std::vector<ScoredDecision> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

}  // namespace

bool pareto_dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions) {
  const auto [a_wins, b_wins] = better_counts(a, b, directions);
  return b_wins == 0 && a_wins > 0;
}

bool nash_dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions) {
  const auto [a_wins, b_wins] = better_counts(a, b, directions);
  return b_wins < a_wins;
}

std::vector<std::size_t> dominance_rank(std::span<const std::vector<double>> vectors,
                                        std::span<const Direction> directions, Relation relation) {
  return rank_impl(
      vectors.size(), [&](std::size_t i) { return std::span<const double>(vectors[i]); }, directions, relation);
}

std::vector<std::size_t> dominance_rank(std::span<const ScoredDecision> set, std::span<const Direction> directions,
                                        Relation relation) {
  return rank_impl(
      set.size(), [&](std::size_t i) { return std::span<const double>(set[i].objective_values); }, directions,
      relation);
}

std::vector<double> ideal_point_distances(std::span<const std::vector<double>> vectors,
                                          std::span<const Direction> directions) {
  const std::size_t m = directions.size();
  std::vector<double> best(m), worst(m);
  for (std::size_t o = 0; o < m; ++o) {
    best[o] = worst[o] = vectors.empty() ? 0.0 : vectors[0][o];
    for (const auto& v : vectors) {
      if (v.size() != m) throw ContractViolation("dominance: objective vectors and directions differ in length");
      if (better(v[o], best[o], directions[o])) best[o] = v[o];
      if (better(worst[o], v[o], directions[o])) worst[o] = v[o];
    }
  }
  std::vector<double> dist;
  dist.reserve(vectors.size());
  for (const auto& v : vectors) {
    double sum = 0.0;
    for (std::size_t o = 0; o < m; ++o) {
      const double width = std::abs(worst[o] - best[o]);
      if (width == 0.0) continue;
      const double z = (v[o] - best[o]) / width;
      sum += z * z;
    }
    dist.push_back(std::sqrt(sum));
  }
  return dist;
}

std::vector<std::size_t> distance_select(std::span<const ScoredDecision> set, std::span<const Direction> directions) {
  if (set.empty()) throw ContractViolation("distance_select: empty set");
  std::vector<std::vector<double>> vectors;
  vectors.reserve(set.size());
  for (const auto& s : set) vectors.push_back(s.objective_values);
  const auto dist = ideal_point_distances(vectors, directions);
  const double lowest = *std::min_element(dist.begin(), dist.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= lowest + kDistanceTolerance) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> compromise_survivors(std::span<const ScoredDecision> archive,
                                              std::span<const Direction> directions) {
  if (archive.empty()) throw ContractViolation("select_compromise: empty archive");

  std::vector<std::size_t> members(archive.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;

  std::vector<std::size_t> violations;
  for (const auto& s : archive) violations.push_back(s.violation_count);
  members = keep_min(members, violations);

  for (Relation relation : {Relation::Pareto, Relation::Nash}) {
    const auto subset = gather(archive, members);
    members = keep_min(members, dominance_rank(subset, directions, relation));
  }

  const auto subset = gather(archive, members);
  std::vector<std::size_t> out;
  for (std::size_t k : distance_select(subset, directions)) out.push_back(members[k]);
  return out;
}

const ScoredDecision& select_compromise(std::span<const ScoredDecision> archive,
                                        std::span<const Direction> directions, Rng& rng) {
  const auto survivors = compromise_survivors(archive, directions);
  return archive[survivors[uniform_index(rng, survivors.size())]];
}

const ScoredDecision& select_compromise(const DecisionArchive& archive, const Region& region, Rng& rng) {
  const auto dirs = region.directions();
  return select_compromise(std::span<const ScoredDecision>(archive.entries()), dirs, rng);
}

}  // namespace autoscale
