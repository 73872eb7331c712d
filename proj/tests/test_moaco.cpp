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

#include <doctest.h>

#include <array>
#include <numeric>
#include <tuple>

#include "support.hpp"

using namespace autoscale;
using testing::FunctionEvaluator;

namespace {

MoacoConfig unit_cfg() {
  MoacoConfig cfg;
  cfg.alpha = 1.0;
  cfg.beta = 1.0;
  return cfg;
}

Region line_region(Direction dir) {
  Region r;
  r.id = "line";
  r.primitives = {testing::grid_primitive("x", 0, 2)};
  r.objectives = {testing::objective("f", dir)};
  return r;
}

FunctionEvaluator identity_eval() {
  return FunctionEvaluator(1, [](std::span<const Value> d, std::span<double> out) { out[0] = static_cast<double>(d[0]); });
}

}  // namespace

TEST_SUITE("moaco") {
  TEST_CASE("config validation") {
    MoacoConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.rho = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
    cfg = MoacoConfig{};
    cfg.v = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
    cfg = MoacoConfig{};
    cfg.max_ant = 0;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
  }

  TEST_CASE("heuristic aggregation") {
    CHECK(aggregate_heuristic(2.0, 1.0, 0.7) == doctest::Approx(1.0));
    CHECK(aggregate_heuristic(0.0, 3.0, 0.2) == doctest::Approx(0.05));
    CHECK(aggregate_heuristic(0.0, 0.0, 0.2) == doctest::Approx(0.2));
  }

  TEST_CASE("relative change scoring") {
    auto s = score_change(3.0, 2.0, Direction::Minimize);
    CHECK(s.improvement == 0.0);
    CHECK(s.degradation == doctest::Approx(0.5));
    s = score_change(3.0, 2.0, Direction::Maximize);
    CHECK(s.improvement == doctest::Approx(0.5));
    CHECK(s.degradation == 0.0);
    s = score_change(2.0, 2.0, Direction::Maximize);
    CHECK(s.improvement == 0.0);
    CHECK(s.degradation == 0.0);
  }

  TEST_CASE("heuristic field over a line") {
    const Region r = line_region(Direction::Maximize);
    const auto eval = identity_eval();
    const auto h = compute_heuristics(r, eval, Decision{{1}});
    REQUIRE(h.values.size() == 1);
    REQUIRE(h.values[0].size() == 3);
    CHECK(h.at(0, 0) == doctest::Approx(0.5));  // pure degradation
    CHECK(h.at(0, 1) == doctest::Approx(1.0));  // no change: smallest nonzero value
    CHECK(h.at(0, 2) == doctest::Approx(1.0));
  }

  TEST_CASE("flat landscape falls back to one") {
    Region r = line_region(Direction::Minimize);
    FunctionEvaluator flat(1, [](std::span<const Value>, std::span<double> out) { out[0] = 4.0; });
    const auto h = compute_heuristics(r, flat, Decision{{0}});
    for (double v : h.values[0]) CHECK(v == doctest::Approx(1.0));
  }

  TEST_CASE("selection follows pheromone") {
    const std::array<std::size_t, 1> sizes{2};
    PheromoneField ph(1, sizes, 0.5);
    ph.trail(0, 0, 0) = 2.0;
    HeuristicField h{{{1.0, 1.0}}};
    const auto p = selection_probabilities(0, 0, ph, h, unit_cfg());
    CHECK(p[0] == doctest::Approx(2.0 / 3.0));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0));

    Rng rng = derive_rng({3});
    int first = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) first += select_value(0, 0, ph, h, unit_cfg(), rng) == 0;
    CHECK(static_cast<double>(first) / n == doctest::Approx(2.0 / 3.0).epsilon(0.015));
  }

  TEST_CASE("uniform fields sample uniformly") {
    const std::array<std::size_t, 1> sizes{4};
    PheromoneField ph(1, sizes, 0.5);
    HeuristicField h{{{1.0, 1.0, 1.0, 1.0}}};
    Rng rng = derive_rng({9});
    std::array<int, 4> counts{};
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[select_value(0, 0, ph, h, MoacoConfig{}, rng)];
    for (int c : counts) CHECK(std::abs(static_cast<double>(c) / n - 0.25) <= 0.01);
  }

  TEST_CASE("single value is always chosen") {
    const std::array<std::size_t, 1> sizes{1};
    PheromoneField ph(1, sizes, 0.5);
    HeuristicField h{{{0.3}}};
    Rng rng = derive_rng({1});
    for (int i = 0; i < 100; ++i) CHECK(select_value(0, 0, ph, h, MoacoConfig{}, rng) == 0);
  }

  TEST_CASE("probabilities sum to one") {
    Rng rng = derive_rng({21});
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + uniform_index(rng, 40);
      const std::array<std::size_t, 1> sizes{n};
      PheromoneField ph(1, sizes, 0.5);
      HeuristicField h{{std::vector<double>(n)}};
      for (std::size_t x = 0; x < n; ++x) {
        ph.trail(0, 0, x) = 0.01 + 10.0 * uniform01(rng);
        h.values[0][x] = 0.001 + uniform01(rng);
      }
      const auto p = selection_probabilities(0, 0, ph, h, MoacoConfig{});
      CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("ant stops at the first satisfactory decision") {
    auto toy = testing::toy_problem();
    const std::array<std::size_t, 2> sizes{3, 3};
    PheromoneField ph(2, sizes, 0.5);
    HeuristicField h{{{1, 1, 1}, {1, 1, 1}}};
    MoacoConfig cfg;
    cfg.max_run = 7;
    Rng rng = derive_rng({2});
    CHECK(ant_construct(0, toy.region, ph, h, toy.eval, cfg, rng).runs_used == 1);
  }

  TEST_CASE("ant exhausts its runs when nothing satisfies") {
    auto toy = testing::toy_problem();
    toy.region.objectives[0].threshold = -1.0;
    const std::array<std::size_t, 2> sizes{3, 3};
    PheromoneField ph(2, sizes, 0.5);
    HeuristicField h{{{1, 1, 1}, {1, 1, 1}}};
    MoacoConfig cfg;
    cfg.max_run = 7;
    Rng rng = derive_rng({2});
    const auto res = ant_construct(0, toy.region, ph, h, toy.eval, cfg, rng);
    CHECK(res.runs_used == 7);
    CHECK(res.scored.violation_count == 1);
    CHECK(res.scored.objective_values == toy.eval.evaluate(res.scored.decision));
  }

  TEST_CASE("fixed grids admit one decision") {
    Region r;
    r.primitives = {testing::grid_primitive("a", 4, 4), testing::grid_primitive("b", 7, 7)};
    r.objectives = {testing::objective("f", Direction::Minimize)};
    FunctionEvaluator eval(1, [](std::span<const Value> d, std::span<double> out) {
      out[0] = static_cast<double>(d[0] + d[1]);
    });
    const std::array<std::size_t, 2> sizes{1, 1};
    PheromoneField ph(1, sizes, 0.5);
    HeuristicField h{{{1}, {1}}};
    Rng rng = derive_rng({5});
    CHECK(ant_construct(0, r, ph, h, eval, MoacoConfig{}, rng).scored.decision == Decision{{4, 7}});
  }

  TEST_CASE("deposit amounts") {
    CHECK(deposit_amount(2.0, 4.0, Direction::Maximize) == doctest::Approx(0.8));
    CHECK(deposit_amount(3.0, 3.0, Direction::Maximize) == doctest::Approx(1.0));
    CHECK(deposit_amount(3.0, 3.0, Direction::Minimize) == doctest::Approx(1.0));
    CHECK(deposit_amount(3.0, 2.0, Direction::Minimize) == doctest::Approx(0.5));
    const double singular = deposit_amount(0.0, 4.0, Direction::Maximize);
    CHECK(singular >= 0.0);
    CHECK(singular <= 1.0);
  }

  TEST_CASE("deposit evaporates everywhere and reinforces the best") {
    const std::array<std::size_t, 2> sizes{3, 2};
    PheromoneField ph(1, sizes, 0.5);
    const std::array<std::size_t, 2> best{2, 0};
    deposit(ph, 0, best, 5.0, 5.0, Direction::Maximize, 0.1);
    CHECK(ph.trail(0, 0, 0) == doctest::Approx(0.9));
    CHECK(ph.trail(0, 1, 1) == doctest::Approx(0.9));
    CHECK(ph.trail(0, 0, 2) == doctest::Approx(1.9));
    CHECK(ph.trail(0, 1, 0) == doctest::Approx(1.9));
  }

  TEST_CASE("max-min bounds") {
    auto [lo, hi] = pheromone_bounds(10.0, Direction::Maximize, 0.1, 0.5);
    CHECK(hi == doctest::Approx(11.111).epsilon(1e-4));
    CHECK(lo == doctest::Approx(5.556).epsilon(1e-3));
    std::tie(lo, hi) = pheromone_bounds(2.0, Direction::Minimize, 0.1, 0.5);
    CHECK(hi == doctest::Approx(0.5556).epsilon(1e-3));

    const std::array<std::size_t, 1> sizes{2};
    PheromoneField ph(1, sizes, 0.5);
    ph.trail(0, 0, 0) = 100.0;
    ph.trail(0, 0, 1) = 0.0;
    ph.set_bounds(0, 5.55, 11.1);
    ph.clamp(0);
    CHECK(ph.trail(0, 0, 0) == doctest::Approx(11.1));
    CHECK(ph.trail(0, 0, 1) == doctest::Approx(5.55));
  }

  TEST_CASE("fresh trails start at one") {
    const std::array<std::size_t, 2> sizes{3, 4};
    PheromoneField ph(2, sizes, 0.4);
    CHECK(ph.tau_max(1) == 1.0);
    CHECK(ph.tau_min(1) == doctest::Approx(0.4));
    CHECK(ph.trail(1, 1, 3) == 1.0);
  }

  TEST_CASE("grid index round trip") {
    Region r;
    r.primitives = {testing::grid_primitive("m", 230, 280, 5, ResourceKind::Memory)};
    const Decision d{{255}};
    const auto idx = grid_indices(r, d);
    CHECK(idx[0] == 5);
    CHECK(decision_from_indices(r, idx) == d);
    CHECK_THROWS_AS(grid_indices(r, Decision{{256}}), ContractViolation);
  }

  TEST_CASE("smallest run still yields a decision") {
    auto toy = testing::toy_problem();
    MoacoConfig cfg;
    cfg.max_iteration = 1;
    cfg.max_ant = 1;
    Rng rng = derive_rng({1});
    CHECK(optimize(toy.region, toy.eval, Decision{{1, 1}}, cfg, rng).size() >= 1);
  }

  TEST_CASE("seeded optimize is reproducible") {
    auto toy = testing::toy_problem();
    MoacoConfig cfg;
    cfg.max_ant = 12;
    Rng r1 = derive_rng({8});
    Rng r2 = derive_rng({8});
    const auto a = optimize(toy.region, toy.eval, Decision{{0, 0}}, cfg, r1);
    const auto b = optimize(toy.region, toy.eval, Decision{{0, 0}}, cfg, r2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.entries()[i].decision == b.entries()[i].decision);
  }

  TEST_CASE("archive holds distinct on-grid decisions") {
    auto toy = testing::toy_problem();
    MoacoConfig cfg;
    cfg.max_ant = 30;
    Rng rng = derive_rng({13});
    const auto arch = optimize(toy.region, toy.eval, Decision{{1, 1}}, cfg, rng);
    std::set<Decision> seen;
    for (const auto& e : arch.entries()) {
      CHECK(validate_decision(toy.region, e.decision).empty());
      CHECK(seen.insert(e.decision).second);
    }
  }

  TEST_CASE("trails stay inside their bounds") {
    auto toy = testing::toy_problem();
    MoacoConfig cfg;
    cfg.max_ant = 20;
    cfg.max_iteration = 8;
    std::size_t iterations = 0;
    OptimizeHooks hooks;
    hooks.on_iteration = [&](const IterationSnapshot& s) {
      ++iterations;
      for (std::size_t o = 0; o < s.pheromone->num_objectives(); ++o) {
        for (std::size_t a = 0; a < s.pheromone->num_primitives(); ++a) {
          for (double t : s.pheromone->trails(o, a)) {
            CHECK(t >= s.pheromone->tau_min(o) - 1e-12);
            CHECK(t <= s.pheromone->tau_max(o) + 1e-12);
          }
        }
      }
    };
    Rng rng = derive_rng({4});
    optimize(toy.region, toy.eval, Decision{{2, 2}}, cfg, rng, &hooks);
    CHECK(iterations == 8);
  }

  TEST_CASE("archive dedup") {
    DecisionArchive arch;
    CHECK(arch.insert({Decision{{1}}, {1.0}, 0}));
    CHECK_FALSE(arch.insert({Decision{{1}}, {2.0}, 0}));
    CHECK(arch.insert({Decision{{2}}, {1.0}, 0}));
    CHECK(arch.size() == 2);
    CHECK(arch.contains(Decision{{2}}));
  }
}
