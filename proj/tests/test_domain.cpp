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

#include <autoscale/domain.hpp>

#include <doctest.h>

#include "support.hpp"

using namespace autoscale;
using autoscale::testing::grid_primitive;

namespace {

ControlPrimitiveSpec table_cpu() {
  ControlPrimitiveSpec p = grid_primitive("vm1.cpu", 15, 40);
  p.hard_min = 1;
  p.hard_max = 100;
  p.initial = 30;
  p.price_per_unit = 0.01;
  return p;
}

}  // namespace

TEST_SUITE("domain") {
  TEST_CASE("lattice membership and rounding") {
    ControlPrimitiveSpec mem = grid_primitive("vm1.memory", 230, 280, 5, ResourceKind::Memory);
    mem.hard_min = 5;
    CHECK(mem.on_grid(250));
    CHECK_FALSE(mem.on_grid(252));
    CHECK_FALSE(mem.on_grid(285));
    CHECK(mem.round_to_lattice(252.4) == 250);
    CHECK(mem.round_to_lattice(252.5) == 255);
    CHECK(mem.grid_size() == 11);
    CHECK(mem.enumerate_grid().front() == 230);
    CHECK(mem.enumerate_grid().back() == 280);
    CHECK(mem.clamp_to_grid(1000) == 280);
    CHECK(mem.clamp_to_grid(0) == 230);
  }

  TEST_CASE("well-formed cpu spec has no violations") { CHECK(validate_primitive(table_cpu(), "cpu").empty()); }

  TEST_CASE("zero step is reported against the primitive") {
    ControlPrimitiveSpec p = table_cpu();
    p.step = 0;
    const auto v = validate_primitive(p, "primitive_types.cpu");
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "primitive_types.cpu");
    CHECK(v[0].message.find("vm1.cpu") != std::string::npos);
  }

  TEST_CASE("inverted and out-of-range bounds are reported") {
    ControlPrimitiveSpec p = table_cpu();
    p.lower_bound = 41;
    CHECK_FALSE(validate_primitive(p, "p").empty());
    p = table_cpu();
    p.upper_bound = 101;
    CHECK_FALSE(validate_primitive(p, "p").empty());
  }

  TEST_CASE("decision validation") {
    Region r;
    r.id = "r";
    r.primitives = {table_cpu()};
    CHECK(validate_decision(r, std::map<std::string, double>{{"vm1.cpu", 30.0}}).empty());
    CHECK(validate_decision(r, std::map<std::string, double>{{"vm1.cpu", 15.5}}).size() == 1);
    CHECK(validate_decision(r, std::map<std::string, double>{{"vm1.cpu", 41.0}}).size() == 1);
    CHECK(validate_decision(r, std::map<std::string, double>{}).empty());
    CHECK(validate_decision(r, std::map<std::string, double>{{"vm1.cpu", 30.0}, {"vm9.cpu", 30.0}}).size() == 1);
    CHECK(validate_decision(r, Decision{{30}}).empty());
    CHECK(validate_decision(r, Decision{{30, 31}}).size() >= 1);
  }

  TEST_CASE("violation counting follows directions") {
    Region r;
    r.objectives = {testing::objective("rt", Direction::Minimize, 2.0),
                    testing::objective("tp", Direction::Maximize, 180.0)};
    const double ok[] = {2.0, 180.0};
    const double both[] = {2.5, 179.0};
    CHECK(r.count_violations(ok) == 0);
    CHECK(r.count_violations(both) == 2);
  }

  TEST_CASE("decisions order and hash by value") {
    Decision a{{1, 2}};
    Decision b{{1, 3}};
    CHECK(a < b);
    CHECK(a == Decision{{1, 2}});
    CHECK(DecisionHash{}(a) == DecisionHash{}(Decision{{1, 2}}));
  }

  TEST_CASE("enum names round-trip") {
    for (auto k : {ResourceKind::Cpu, ResourceKind::Memory, ResourceKind::Thread}) {
      CHECK(parse_resource_kind(to_string(k)) == k);
    }
    for (auto k : {ObjectiveKind::ResponseTime, ObjectiveKind::Throughput, ObjectiveKind::Reliability,
                   ObjectiveKind::Availability, ObjectiveKind::Cost}) {
      CHECK(parse_objective_kind(to_string(k)) == k);
    }
    CHECK_FALSE(parse_resource_kind("disk").has_value());
  }
}
