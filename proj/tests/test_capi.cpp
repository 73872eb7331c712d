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

// Exercises the shared library through its C header only.

#include <autoscale/autoscale.h>

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "tiny_scenario.hpp"

namespace {

struct ScenarioHandle {
  as_scenario* h = nullptr;
  ~ScenarioHandle() { as_scenario_free(h); }
};

struct PlanHandle {
  as_plan* h = nullptr;
  ~PlanHandle() { as_plan_free(h); }
};

struct ResultHandle {
  as_result* h = nullptr;
  ~ResultHandle() { as_result_free(h); }
};

std::string temp_path(const char* name) { return std::string("/tmp/autoscale-capi-") + name; }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(as_version()) > 0);
  CHECK(std::string(as_status_name(AS_OK)) == "ok");
  CHECK(std::string(as_status_name(AS_ERR_CONFIG)) == "configuration error");
}

TEST_CASE("null arguments are rejected") {
  as_scenario* s = nullptr;
  CHECK(as_scenario_load(nullptr, &s) == AS_ERR_INVALID_ARGUMENT);
  CHECK(as_scenario_parse("{}", nullptr) == AS_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(as_last_error()) > 0);
  as_scenario_free(nullptr);
  as_plan_free(nullptr);
  as_result_free(nullptr);
}

TEST_CASE("missing file and bad json") {
  ScenarioHandle s;
  CHECK(as_scenario_load("/nonexistent/x.json", &s.h) == AS_ERR_IO);
  CHECK(s.h == nullptr);
  CHECK(as_scenario_parse("{oops", &s.h) == AS_ERR_CONFIG);
  CHECK(std::string(as_last_error()).size() > 0);
}

TEST_CASE("bundled scenario loads and validates") {
  ScenarioHandle s;
  REQUIRE(as_scenario_load(autoscale::testing::bundled_scenario().c_str(), &s.h) == AS_OK);
  const char* name = nullptr;
  REQUIRE(as_scenario_name(s.h, &name) == AS_OK);
  CHECK(std::string(name) == "rubis_3vm");
  size_t count = 99;
  REQUIRE(as_scenario_validate(s.h, &count) == AS_OK);
  CHECK(count == 0);
  size_t objectives = 0, primitives = 0, regions = 0;
  REQUIRE(as_scenario_counts(s.h, &objectives, &primitives, &regions) == AS_OK);
  CHECK(objectives == 30);
  CHECK(primitives == 15);
  CHECK(regions == 1);
}

TEST_CASE("violations are reported through the handle") {
  std::string text = autoscale::testing::kTinyScenario;
  const auto at = text.find("\"step\": 1");
  REQUIRE(at != std::string::npos);
  text.replace(at, 9, "\"step\": 0");
  ScenarioHandle s;
  REQUIRE(as_scenario_parse(text.c_str(), &s.h) == AS_OK);
  size_t count = 0;
  REQUIRE(as_scenario_validate(s.h, &count) == AS_OK);
  REQUIRE(count == 1);
  const char* path = nullptr;
  const char* message = nullptr;
  REQUIRE(as_scenario_violation(s.h, 0, &path, &message) == AS_OK);
  CHECK(std::string(message).find("vm1.cpu") != std::string::npos);
  CHECK(as_scenario_violation(s.h, 5, &path, &message) == AS_ERR_NOT_FOUND);
}

TEST_CASE("plan parameters") {
  ScenarioHandle s;
  REQUIRE(as_scenario_parse(autoscale::testing::kTinyScenario, &s.h) == AS_OK);
  PlanHandle p;
  REQUIRE(as_plan_create(s.h, &p.h) == AS_OK);
  as_moaco_params m;
  REQUIRE(as_plan_get_moaco(p.h, &m) == AS_OK);
  CHECK(m.max_ant == 10);
  CHECK(m.alpha == 4.0);
  m.rho = 2.0;
  CHECK(as_plan_set_moaco(p.h, &m) == AS_ERR_INVALID_ARGUMENT);
  as_moga_params g;
  REQUIRE(as_plan_get_moga(p.h, &g) == AS_OK);
  CHECK(g.population_size == 12);
  CHECK(as_plan_set_approaches(p.h, "rule,annealing") == AS_ERR_INVALID_ARGUMENT);
  CHECK(as_plan_set_approaches(p.h, "rule,rule") == AS_ERR_INVALID_ARGUMENT);
  CHECK(as_plan_set_approaches(p.h, "rule,hill") == AS_OK);
  CHECK(as_plan_set_intervals(p.h, 12, 12) == AS_ERR_INVALID_ARGUMENT);
  CHECK(as_plan_set_runs(p.h, 0) == AS_ERR_INVALID_ARGUMENT);
  CHECK(as_plan_set_time_budget(p.h, -1.0) == AS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("experiment through the c interface") {
  ScenarioHandle s;
  REQUIRE(as_scenario_parse(autoscale::testing::kTinyScenario, &s.h) == AS_OK);
  PlanHandle p;
  REQUIRE(as_plan_create(s.h, &p.h) == AS_OK);
  REQUIRE(as_plan_set_approaches(p.h, "moaco-cd,rule") == AS_OK);
  REQUIRE(as_plan_set_intervals(p.h, 12, 2) == AS_OK);
  REQUIRE(as_plan_set_runs(p.h, 2) == AS_OK);
  REQUIRE(as_plan_set_seed(p.h, 3) == AS_OK);
  REQUIRE(as_plan_set_threads(p.h, 1) == AS_OK);
  const std::string out = temp_path("run");
  REQUIRE(as_plan_set_output(p.h, out.c_str()) == AS_OK);

  ResultHandle r;
  REQUIRE(as_experiment_run(p.h, &r.h) == AS_OK);
  CHECK(as_result_row_count(r.h) > 0);
  double c = -1.0;
  REQUIRE(as_result_value(r.h, "moaco-cd", "c_metric", "rule", &c) == AS_OK);
  CHECK(c >= 0.0);
  CHECK(c <= 1.0);
  double missing = 0.0;
  CHECK(as_result_value(r.h, "moga", "c_metric", "rule", &missing) == AS_ERR_NOT_FOUND);
  const char *approach = nullptr, *metric = nullptr, *target = nullptr;
  double value = 0.0;
  REQUIRE(as_result_row(r.h, 0, &approach, &metric, &target, &value) == AS_OK);
  CHECK(std::string(approach).size() > 0);

  ResultHandle again;
  REQUIRE(as_summarize_dir((out + "/tiny").c_str(), 2, &again.h) == AS_OK);
  REQUIRE(as_result_row_count(again.h) == as_result_row_count(r.h));
  const std::string a = temp_path("a.csv"), b = temp_path("b.csv");
  REQUIRE(as_result_write_summary(r.h, a.c_str()) == AS_OK);
  REQUIRE(as_result_write_summary(again.h, b.c_str()) == AS_OK);
  std::ifstream fa(a), fb(b);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  CHECK(sa == sb);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("trace generation") {
  ScenarioHandle s;
  REQUIRE(as_scenario_parse(autoscale::testing::kTinyScenario, &s.h) == AS_OK);
  as_trace_params tp;
  as_trace_params_default(&tp);
  tp.intervals = 9;
  const std::string path = temp_path("trace.csv");
  REQUIRE(as_trace_generate(s.h, &tp, path.c_str()) == AS_OK);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 10);
  std::remove(path.c_str());
}

TEST_CASE("single decision as json") {
  ScenarioHandle s;
  REQUIRE(as_scenario_parse(autoscale::testing::kTinyScenario, &s.h) == AS_OK);
  char* json = nullptr;
  REQUIRE(as_decide_once(s.h, "moaco-cd", 3, 1, 10.0, &json) == AS_OK);
  REQUIRE(json != nullptr);
  CHECK(json[0] == '{');
  as_string_free(json);
  CHECK(as_decide_once(s.h, "annealing", 3, 1, 10.0, &json) == AS_ERR_INVALID_ARGUMENT);
}
