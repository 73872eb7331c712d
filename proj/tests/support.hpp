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

// Fixtures shared by the unit tests and the acceptance binary.

#ifndef AUTOSCALE_TESTS_SUPPORT_HPP
#define AUTOSCALE_TESTS_SUPPORT_HPP

#include <autoscale/domain.hpp>
#include <autoscale/qos_model.hpp>

#include <cstddef>
#include <functional>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tiny_scenario.hpp"

namespace autoscale::testing {

inline ControlPrimitiveSpec grid_primitive(std::string id, Value lo, Value hi, Value step = 1,
                                           ResourceKind kind = ResourceKind::Cpu, std::string owner = "vm1") {
  ControlPrimitiveSpec p;
  p.id = std::move(id);
  p.kind = kind;
  p.scope = kind == ResourceKind::Thread ? PrimitiveScope::PerService : PrimitiveScope::PerVmShared;
  p.owner = std::move(owner);
  p.initial = lo;
  p.step = step;
  p.base_lower = lo;
  p.lower_bound = lo;
  p.upper_bound = hi;
  p.hard_min = lo;
  p.hard_max = hi;
  return p;
}

inline ObjectiveSpec objective(std::string id, Direction dir,
                               double threshold = std::numeric_limits<double>::quiet_NaN()) {
  ObjectiveSpec o;
  o.id = std::move(id);
  o.direction = dir;
  o.owner = "svc";
  if (threshold != threshold) {
    threshold = dir == Direction::Minimize ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity();
  }
  o.threshold = threshold;
  return o;
}

using ObjectiveFn = std::function<void(std::span<const Value>, std::span<double>)>;

class FunctionEvaluator final : public RegionEvaluator {
 public:
  FunctionEvaluator(std::size_t objectives, ObjectiveFn fn) : m_(objectives), fn_(std::move(fn)) {}
  std::size_t num_objectives() const override { return m_; }
  using RegionEvaluator::evaluate;
  void evaluate(std::span<const Value> decision, std::span<double> out) const override { fn_(decision, out); }

 private:
  std::size_t m_;
  ObjectiveFn fn_;
};

// Every grid point of the region, odometer order.
inline std::vector<Decision> enumerate_decisions(const Region& region) {
  std::vector<std::vector<Value>> grids;
  for (const auto& p : region.primitives) grids.push_back(p.enumerate_grid());
  std::vector<Decision> out;
  std::vector<std::size_t> idx(grids.size(), 0);
  while (true) {
    Decision d;
    for (std::size_t a = 0; a < grids.size(); ++a) d.values.push_back(grids[a][idx[a]]);
    out.push_back(std::move(d));
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == grids[a].size()) idx[a++] = 0;
    if (a == idx.size()) break;
  }
  return out;
}

// Written out independently of the library's dominance code.
inline bool oracle_pareto(const std::vector<double>& a, const std::vector<double>& b,
                          const std::vector<Direction>& dirs) {
  bool strictly = false;
  for (std::size_t o = 0; o < a.size(); ++o) {
    const double ga = dirs[o] == Direction::Minimize ? -a[o] : a[o];
    const double gb = dirs[o] == Direction::Minimize ? -b[o] : b[o];
    if (ga < gb) return false;
    if (ga > gb) strictly = true;
  }
  return strictly;
}

inline int oracle_wins(const std::vector<double>& a, const std::vector<double>& b,
                       const std::vector<Direction>& dirs) {
  int n = 0;
  for (std::size_t o = 0; o < a.size(); ++o) {
    if (dirs[o] == Direction::Minimize ? a[o] < b[o] : a[o] > b[o]) ++n;
  }
  return n;
}

inline bool oracle_nash(const std::vector<double>& a, const std::vector<double>& b,
                        const std::vector<Direction>& dirs) {
  return oracle_wins(b, a, dirs) < oracle_wins(a, b, dirs);
}

inline std::set<Decision> brute_force_front(const Region& region, const RegionEvaluator& eval) {
  const auto all = enumerate_decisions(region);
  const auto dirs = region.directions();
  std::vector<std::vector<double>> values;
  for (const auto& d : all) values.push_back(eval.evaluate(d));
  std::set<Decision> front;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) dominated = oracle_pareto(values[j], values[i], dirs);
    if (!dominated) front.insert(all[i]);
  }
  return front;
}

// Two primitives with three values each and two conflicting objectives.
struct ToyProblem {
  Region region;
  FunctionEvaluator eval;
};

inline ToyProblem toy_problem() {
  Region r;
  r.id = "toy";
  r.primitives = {grid_primitive("x", 0, 2), grid_primitive("y", 0, 2, 1, ResourceKind::Memory)};
  r.objectives = {objective("cost", Direction::Minimize), objective("speed", Direction::Maximize)};
  FunctionEvaluator eval(2, [](std::span<const Value> d, std::span<double> out) {
    const double x = static_cast<double>(d[0]);
    const double y = static_cast<double>(d[1]);
    out[0] = 2.0 * x + y;
    out[1] = 3.0 * x + y * y - x * y;
  });
  return {std::move(r), std::move(eval)};
}



}  // namespace autoscale::testing

#endif  // AUTOSCALE_TESTS_SUPPORT_HPP
