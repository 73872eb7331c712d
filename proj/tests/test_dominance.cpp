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

#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace autoscale;

namespace {

const std::vector<Direction> kMin2{Direction::Minimize, Direction::Minimize};
const std::vector<Direction> kMin3{Direction::Minimize, Direction::Minimize, Direction::Minimize};

std::vector<double> v(std::initializer_list<double> xs) { return xs; }

bool pareto(const std::vector<double>& a, const std::vector<double>& b, const std::vector<Direction>& d) {
  return pareto_dominates(a, b, d);
}
bool nash(const std::vector<double>& a, const std::vector<double>& b, const std::vector<Direction>& d) {
  return nash_dominates(a, b, d);
}

ScoredDecision scored(Value id, std::vector<double> values, std::size_t violations = 0) {
  return {Decision{{id}}, std::move(values), violations};
}

}  // namespace

TEST_SUITE("dominance") {
  TEST_CASE("pareto dominance") {
    CHECK(pareto(v({1, 1}), v({2, 2}), kMin2));
    CHECK_FALSE(pareto(v({1, 1}), v({1, 1}), kMin2));
    CHECK_FALSE(pareto(v({1, 3}), v({2, 2}), kMin2));
    CHECK_FALSE(pareto(v({2, 2}), v({1, 3}), kMin2));
    const std::vector<Direction> mixed{Direction::Minimize, Direction::Maximize};
    CHECK(pareto(v({1, 5}), v({2, 4}), mixed));
  }

  TEST_CASE("nash dominance") {
    CHECK(nash(v({1, 2, 3}), v({2, 1, 4}), kMin3));
    CHECK_FALSE(nash(v({2, 1, 4}), v({1, 2, 3}), kMin3));
    CHECK_FALSE(nash(v({1, 2, 3}), v({1, 2, 3}), kMin3));
    CHECK_FALSE(nash(v({1, 2}), v({2, 1}), kMin2));
    CHECK_FALSE(nash(v({2, 1}), v({1, 2}), kMin2));
  }

  TEST_CASE("length mismatch") {
    CHECK_THROWS_AS(pareto(v({1, 2}), v({1, 2, 3}), kMin2), ContractViolation);
    CHECK_THROWS_AS(nash(v({1, 2}), v({1, 2}), kMin3), ContractViolation);
  }

  TEST_CASE("ranks") {
    const std::vector<std::vector<double>> front{v({1, 3}), v({2, 2}), v({3, 1})};
    CHECK(dominance_rank(front, kMin2, Relation::Pareto) == std::vector<std::size_t>{0, 0, 0});
    const std::vector<std::vector<double>> chain{v({1, 1}), v({2, 2}), v({3, 3})};
    CHECK(dominance_rank(chain, kMin2, Relation::Pareto) == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("ranks match a pairwise oracle") {
    Rng rng = derive_rng({77});
    const std::vector<Direction> dirs{Direction::Minimize, Direction::Maximize, Direction::Minimize,
                                      Direction::Maximize, Direction::Minimize};
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::vector<double>> vecs(120);
      for (auto& x : vecs) {
        for (int o = 0; o < 5; ++o) x.push_back(std::floor(uniform01(rng) * 6.0));
      }
      const auto pr = dominance_rank(vecs, dirs, Relation::Pareto);
      const auto nr = dominance_rank(vecs, dirs, Relation::Nash);
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        std::size_t p = 0, n = 0;
        for (std::size_t j = 0; j < vecs.size(); ++j) {
          if (i == j) continue;
          p += testing::oracle_pareto(vecs[j], vecs[i], dirs);
          n += testing::oracle_nash(vecs[j], vecs[i], dirs);
        }
        CHECK(pr[i] == p);
        CHECK(nr[i] == n);
      }
    }
  }

  TEST_CASE("ideal point distances") {
    const std::vector<std::vector<double>> set{v({0, 1}), v({1, 0}), v({0.6, 0.6})};
    const auto d = ideal_point_distances(set, kMin2);
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[2] == doctest::Approx(std::sqrt(0.72)));
    CHECK(d[2] == doctest::Approx(0.849).epsilon(1e-3));
  }

  TEST_CASE("distance selection") {
    const std::vector<ScoredDecision> one{scored(1, v({3, 4}))};
    CHECK(distance_select(one, kMin2) == std::vector<std::size_t>{0});
    const std::vector<ScoredDecision> best{scored(1, v({2, 2})), scored(2, v({1, 1})), scored(3, v({1, 3}))};
    CHECK(distance_select(best, kMin2) == std::vector<std::size_t>{1});
    const std::vector<ScoredDecision> knee{scored(1, v({0, 1})), scored(2, v({1, 0})), scored(3, v({0.6, 0.6}))};
    CHECK(distance_select(knee, kMin2) == std::vector<std::size_t>{2});
  }

  TEST_CASE("a dominating, compliant decision always wins") {
    const std::vector<ScoredDecision> arch{scored(1, v({3, 3})), scored(2, v({1, 1})), scored(3, v({2, 1}))};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng = derive_rng({seed});
      CHECK(select_compromise(arch, kMin2, rng).decision == Decision{{2}});
    }
  }

  TEST_CASE("fewest violations first") {
    const std::vector<ScoredDecision> arch{scored(1, v({1, 1}), 2), scored(2, v({5, 5}), 1),
                                           scored(3, v({0, 0}), 3)};
    CHECK(compromise_survivors(arch, kMin2) == std::vector<std::size_t>{1});
  }

  TEST_CASE("majority preference breaks pareto ties") {
    std::vector<double> a(10, 1.0), b(10, 2.0);
    a[9] = 9.0;
    b[9] = 0.0;
    const std::vector<Direction> dirs(10, Direction::Minimize);
    const std::vector<ScoredDecision> arch{scored(2, b), scored(1, a)};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng = derive_rng({seed});
      CHECK(select_compromise(arch, dirs, rng).decision == Decision{{1}});
    }
  }

  TEST_CASE("empty archive") {
    const std::vector<ScoredDecision> none;
    Rng rng = derive_rng({1});
    CHECK_THROWS_AS(select_compromise(none, kMin2, rng), ContractViolation);
  }

  TEST_CASE("ties are broken by the seed only") {
    const std::vector<ScoredDecision> arch{scored(1, v({1, 2})), scored(2, v({2, 1}))};
    std::set<Value> picked;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Rng r1 = derive_rng({seed});
      Rng r2 = derive_rng({seed});
      const auto& a = select_compromise(arch, kMin2, r1);
      CHECK(a.decision == select_compromise(arch, kMin2, r2).decision);
      picked.insert(a.decision.values[0]);
    }
    CHECK(picked.size() == 2);
  }
}
