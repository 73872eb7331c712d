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
#include <autoscale/scenario.hpp>

#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace autoscale;
using testing::FunctionEvaluator;

namespace {

struct RuleBench {
  SimulationSetup setup = simulation_setup(parse_scenario(testing::kTinyScenario));
  Region region = build_region(setup, setup.regions.at(0), setup.primitives);
  EnvironmentState env;

  RuleBench() {
    env.configuration = {{"vm1.cpu", 30}, {"vm1.memory", 250}, {"svc.thread", 5}};
    env.observed = {{"svc.response_time", 1.0}, {"svc.throughput", 60.0}, {"svc.cost", 0.9}};
    env.utilizations = {{"vm1.cpu", 0.9}, {"vm1.memory", 0.9}, {"svc.thread", 0.9}};
  }
  Value value(const Decision& d, const std::string& id) const { return d.values[*region.primitive_index(id)]; }
};

// Single objective, unique minimum at (2, 0, 1).
struct Bowl {
  Region region;
  FunctionEvaluator eval{1, [](std::span<const Value> d, std::span<double> out) {
                           const double a = static_cast<double>(d[0]) - 2.0;
                           const double b = static_cast<double>(d[1]);
                           const double c = static_cast<double>(d[2]) - 1.0;
                           out[0] = a * a + 2.0 * b * b + 3.0 * c * c;
                         }};
  Bowl() {
    region.primitives = {testing::grid_primitive("a", 0, 2), testing::grid_primitive("b", 0, 2),
                         testing::grid_primitive("c", 0, 2)};
    region.objectives = {testing::objective("f", Direction::Minimize)};
  }
};

// x trades one objective for the other; any y > 0 hurts both.
struct ThreePointFront {
  Region region;
  FunctionEvaluator eval{2, [](std::span<const Value> d, std::span<double> out) {
                           out[0] = static_cast<double>(d[0] + d[1]);
                           out[1] = static_cast<double>(d[0] - d[1]);
                         }};
  ThreePointFront() {
    region.primitives = {testing::grid_primitive("x", 0, 2), testing::grid_primitive("y", 0, 2)};
    region.objectives = {testing::objective("lo", Direction::Minimize), testing::objective("hi", Direction::Maximize)};
  }
};

SearchBudget evals(std::size_t n) { return {n, 60.0}; }

}  // namespace

TEST_SUITE("baselines") {
  TEST_CASE("weighted sum normalizes by what it has seen") {
    WeightedSum ws({Direction::Minimize, Direction::Maximize});
    const double a[] = {1.0, 10.0};
    const double b[] = {3.0, 20.0};
    ws.observe(a);
    ws.observe(b);
    CHECK(ws.score(a) == doctest::Approx(1.0));
    CHECK(ws.score(b) == doctest::Approx(1.0));
    const double c[] = {1.0, 20.0};
    CHECK(ws.score(c) == doctest::Approx(0.0));
    WeightedSum flat({Direction::Minimize});
    const double x[] = {5.0};
    flat.observe(x);
    CHECK(flat.score(x) == 0.0);
  }

  TEST_CASE("rule steps up on a breach") {
    RuleBench b;
    b.env.observed["svc.response_time"] = 3.0;
    const Decision d = rule_decide(b.env, b.region, b.setup.topology, Trigger::SlaViolation);
    CHECK(b.value(d, "vm1.cpu") == 31);
    CHECK(b.value(d, "vm1.memory") == 255);
    CHECK(b.value(d, "svc.thread") == 6);
  }

  TEST_CASE("rule holds at the upper bound") {
    RuleBench b;
    b.env.configuration["vm1.cpu"] = 40;
    b.env.observed["svc.response_time"] = 3.0;
    const Decision d = rule_decide(b.env, b.region, b.setup.topology, Trigger::SlaViolation);
    CHECK(b.value(d, "vm1.cpu") == 40);
  }

  TEST_CASE("rule ignores budget breaches") {
    RuleBench b;
    b.env.observed["svc.cost"] = 5.0;
    const Decision d = rule_decide(b.env, b.region, b.setup.topology, Trigger::SlaViolation);
    CHECK(b.value(d, "vm1.cpu") == 30);
  }

  TEST_CASE("rule steps down idle primitives only") {
    RuleBench b;
    b.env.utilizations["vm1.cpu"] = 0.2;
    Decision d = rule_decide(b.env, b.region, b.setup.topology, Trigger::LowUtilization);
    CHECK(b.value(d, "vm1.cpu") == 29);
    CHECK(b.value(d, "vm1.memory") == 250);
    b.env.configuration["vm1.cpu"] = 15;
    d = rule_decide(b.env, b.region, b.setup.topology, Trigger::LowUtilization);
    CHECK(b.value(d, "vm1.cpu") == 15);
  }

  TEST_CASE("rule needs a trigger") {
    RuleBench b;
    CHECK_THROWS_AS(rule_decide(b.env, b.region, b.setup.topology, Trigger::None), ContractViolation);
  }

  TEST_CASE("hill climbing finds the bottom of a bowl") {
    Bowl bowl;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng = derive_rng({seed});
      CHECK(hill_climb(bowl.region, bowl.eval, evals(200), rng) == Decision{{2, 0, 1}});
    }
  }

  TEST_CASE("one evaluation returns what was evaluated") {
    Bowl bowl;
    std::size_t calls = 0;
    FunctionEvaluator counted(1, [&](std::span<const Value> d, std::span<double> out) {
      ++calls;
      bowl.eval.evaluate(d, out);
    });
    Rng rng = derive_rng({3});
    const Decision d = hill_climb(bowl.region, counted, evals(1), rng);
    CHECK(calls == 1);
    CHECK(validate_decision(bowl.region, d).empty());
  }

  TEST_CASE("searches are seeded") {
    Bowl bowl;
    Rng a = derive_rng({5}), b = derive_rng({5});
    CHECK(hill_climb(bowl.region, bowl.eval, evals(7), a) == hill_climb(bowl.region, bowl.eval, evals(7), b));
    Rng c = derive_rng({5}), d = derive_rng({5});
    CHECK(random_search(bowl.region, bowl.eval, evals(7), c) == random_search(bowl.region, bowl.eval, evals(7), d));
  }

  TEST_CASE("random search on a single point") {
    Region r;
    r.primitives = {testing::grid_primitive("a", 3, 3)};
    r.objectives = {testing::objective("f", Direction::Minimize)};
    FunctionEvaluator eval(1, [](std::span<const Value>, std::span<double> out) { out[0] = 1.0; });
    Rng rng = derive_rng({1});
    CHECK(random_search(r, eval, evals(5), rng) == Decision{{3}});
  }

  TEST_CASE("random search hits the optimum at the sampling rate") {
    Bowl bowl;
    const std::size_t n = 27;
    const std::size_t budget = 27;
    const int trials = 400;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng = derive_rng({static_cast<std::uint64_t>(t), 99});
      hits += random_search(bowl.region, bowl.eval, evals(budget), rng) == Decision{{2, 0, 1}};
    }
    const double expected = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(n), static_cast<double>(budget));
    const double sigma = std::sqrt(expected * (1.0 - expected) / trials);
    CHECK(static_cast<double>(hits) / trials >= expected - 3.0 * sigma);
  }

  TEST_CASE("moga config validation") {
    MogaConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.population_size = 1;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
    cfg = MogaConfig{};
    cfg.crossover_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
  }

  TEST_CASE("non-dominated sort and crowding") {
    const std::vector<std::vector<double>> vals{{1, 1}, {2, 2}, {1, 3}, {3, 1}, {3, 3}};
    const std::vector<Direction> dirs{Direction::Minimize, Direction::Minimize};
    const auto fronts = non_dominated_sort(vals, dirs);
    REQUIRE(fronts.size() == 3);
    CHECK(fronts[0] == std::vector<std::size_t>{0});
    std::vector<std::size_t> second = fronts[1];
    std::sort(second.begin(), second.end());
    CHECK(second == std::vector<std::size_t>{1, 2, 3});
    CHECK(fronts[2] == std::vector<std::size_t>{4});
    const auto crowd = crowding_distance(vals, fronts[1]);
    int infinite = 0;
    for (double c : crowd) infinite += std::isinf(c);
    CHECK(infinite == 2);
  }

  TEST_CASE("clones collapse to one front member") {
    Region r;
    r.primitives = {testing::grid_primitive("a", 2, 2), testing::grid_primitive("b", 6, 6)};
    r.objectives = {testing::objective("f", Direction::Minimize), testing::objective("g", Direction::Maximize)};
    FunctionEvaluator eval(2, [](std::span<const Value> d, std::span<double> out) {
      out[0] = static_cast<double>(d[0]);
      out[1] = static_cast<double>(d[1]);
    });
    MogaConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 3;
    Rng rng = derive_rng({1});
    const auto res = moga_optimize(r, eval, cfg, evals(100000), rng);
    CHECK(res.front.size() == 1);
    CHECK(res.chosen.decision == Decision{{2, 6}});
  }

  TEST_CASE("moga recovers a three point front") {
    ThreePointFront p;
    const auto truth = testing::brute_force_front(p.region, p.eval);
    REQUIRE(truth.size() == 3);
    MogaConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 15;
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng = derive_rng({seed, 4});
      const auto res = moga_optimize(p.region, p.eval, cfg, evals(100000), rng);
      std::set<Decision> got;
      for (const auto& e : res.front.entries()) got.insert(e.decision);
      exact += got == truth;
    }
    CHECK(exact >= 45);
  }

  TEST_CASE("moga is seeded") {
    auto toy = testing::toy_problem();
    MogaConfig cfg;
    cfg.population_size = 16;
    cfg.generations = 6;
    Rng a = derive_rng({12}), b = derive_rng({12});
    const auto ra = moga_optimize(toy.region, toy.eval, cfg, evals(100000), a);
    const auto rb = moga_optimize(toy.region, toy.eval, cfg, evals(100000), b);
    REQUIRE(ra.front.size() == rb.front.size());
    for (std::size_t i = 0; i < ra.front.size(); ++i) {
      CHECK(ra.front.entries()[i].decision == rb.front.entries()[i].decision);
    }
    CHECK(ra.chosen.decision == rb.chosen.decision);
  }
}
