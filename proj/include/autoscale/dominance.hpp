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

#ifndef AUTOSCALE_DOMINANCE_HPP
#define AUTOSCALE_DOMINANCE_HPP

#include <autoscale/archive.hpp>
#include <autoscale/domain.hpp>
#include <autoscale/rng.hpp>

#include <cstddef>
#include <span>
#include <vector>

// Compromise-dominance: a superiority phase (pareto ranking) followed by a
// fairness phase (nash ranking, then distance to the per-objective ideal
// point). Equal values never count as an improvement in either relation.

namespace autoscale {

enum class Relation { Pareto, Nash };

/// `a` is no worse than `b` everywhere and strictly better somewhere.
bool pareto_dominates(std::span<const double> a, std::span<const double> b,
                      std::span<const Direction> directions);

/// Fewer objectives improve when switching a -> b than when switching b -> a.
bool nash_dominates(std::span<const double> a, std::span<const double> b,
                    std::span<const Direction> directions);

/// rank[i] = number of other members dominating member i under `relation`.
std::vector<std::size_t> dominance_rank(std::span<const std::vector<double>> vectors,
                                        std::span<const Direction> directions, Relation relation);
std::vector<std::size_t> dominance_rank(std::span<const ScoredDecision> set,
                                        std::span<const Direction> directions, Relation relation);

/// Normalized Euclidean distance of each vector to the per-objective best of
/// the set. Objectives with zero spread contribute nothing.
std::vector<double> ideal_point_distances(std::span<const std::vector<double>> vectors,
                                          std::span<const Direction> directions);

/// Indices of the members at minimal distance.
std::vector<std::size_t> distance_select(std::span<const ScoredDecision> set,
                                         std::span<const Direction> directions);

/// Indices (into the archive) that survive the four deterministic filters:
/// least violations, least pareto-dominated, least nash-dominated, closest
/// to the ideal point.
std::vector<std::size_t> compromise_survivors(std::span<const ScoredDecision> archive,
                                              std::span<const Direction> directions);

/// Seeded uniform pick among the survivors. Throws ContractViolation on an
/// empty archive.
const ScoredDecision& select_compromise(const DecisionArchive& archive, const Region& region, Rng& rng);
const ScoredDecision& select_compromise(std::span<const ScoredDecision> archive,
                                        std::span<const Direction> directions, Rng& rng);

}  // namespace autoscale

#endif  // AUTOSCALE_DOMINANCE_HPP
