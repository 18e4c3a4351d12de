// Copyright 2026 The eun Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eun/error.hpp"
#include "eun/report.hpp"

namespace eun {
namespace {

using nlohmann::json;

std::string config_error(const json& cfg) {
  try {
    parse_config(cfg);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::config);
    return e.what();
  }
  ADD_FAILURE() << "accepted " << cfg.dump();
  return {};
}

TEST(ParseConfig, MinimalEnablesDependencies) {
  const auto req = parse_config(json{{"model", "isotropic"}, {"n_qubits", 3},
                                     {"couplings", "all-pairs"},
                                     {"tasks", {"decompose"}}});
  EXPECT_TRUE(req.tasks.count(Task::decompose));
  EXPECT_TRUE(req.tasks.count(Task::closure));
  EXPECT_EQ(req.seed, 0u);
  EXPECT_EQ(req.spec.couplings.size(), 3u);
  EXPECT_EQ(req.tolerances.closure, 1e-9);
}

TEST(ParseConfig, DependencyChain) {
  const auto t = with_dependencies({Task::conjoin});
  EXPECT_EQ(t, (std::set<Task>{Task::closure, Task::decompose, Task::codes,
                               Task::conjoin}));
  EXPECT_EQ(with_dependencies({Task::scaling}), std::set<Task>{Task::scaling});
}

TEST(ParseConfig, BadCustomExpressionIsNamed) {
  const std::string msg = config_error(json{{"model", "custom"}, {"n_qubits", 2},
                                            {"custom", {"XXI + YYI"}}});
  EXPECT_NE(msg.find("XXI + YYI"), std::string::npos) << msg;
  EXPECT_NE(msg.find("$.custom[0]"), std::string::npos) << msg;
}

TEST(ParseConfig, KeyPathDiagnostics) {
  EXPECT_NE(config_error(json{{"model", "isotropic"}}).find("n_qubits"), std::string::npos);
  EXPECT_NE(config_error(json{{"model", "ising"}, {"n_qubits", 3}}).find("$.model"),
            std::string::npos);
  EXPECT_NE(config_error(json{{"model", "isotropic"}, {"n_qubits", 3}, {"bogus", 1}})
                .find("$.bogus"), std::string::npos);
  EXPECT_NE(config_error(json{{"model", "isotropic"}, {"n_qubits", 3},
                              {"tolerances", {{"closure", -1.0}}}})
                .find("$.tolerances.closure"), std::string::npos);
  EXPECT_NE(config_error(json{{"model", "isotropic"}, {"n_qubits", 3},
                              {"tasks", {"closure", "fly"}}})
                .find("$.tasks[1]"), std::string::npos);
  EXPECT_NE(config_error(json{{"model", "isotropic"}, {"n_qubits", 3},
                              {"couplings", {{1, 1}}}})
                .find("self"), std::string::npos);
}

TEST(ParseConfig, EdgeListForms) {
  const auto a = parse_config(json{{"model", "isotropic"}, {"n_qubits", 4},
                                   {"couplings", "1-2, 3-4"}});
  ASSERT_EQ(a.spec.couplings.size(), 2u);
  EXPECT_EQ(a.spec.couplings[1].i, 3);
  const auto b = parse_config(json{{"model", "anisotropic"}, {"n_qubits", 2},
                                   {"couplings", {{1, 2, 0.5, 1.0, 2.0}}}});
  EXPECT_EQ(b.spec.couplings[0].jz, 2.0);
  const auto c = parse_config(json{{"model", "xy"}, {"n_qubits", 2},
                                   {"couplings", {{{"i", 1}, {"j", 2}, {"J", 3.0}}}}});
  EXPECT_EQ(c.spec.couplings[0].jx, 3.0);
  EXPECT_EQ(c.spec.couplings[0].jz, 0.0);
}

TEST(ParseConfig, FromFile) {
  const auto path = std::filesystem::temp_directory_path() / "eun_cfg_test.json";
  {
    std::ofstream out(path);
    out << R"({"model": "isotropic", "n_qubits": 3, "seed": 9})";
  }
  EXPECT_EQ(parse_config(path).seed, 9u);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(parse_config(path), Error);
  std::filesystem::remove(path);
  EXPECT_THROW(parse_config(path), Error);
}

TEST(ConfigSchema, IsJson) {
  const json s = json::parse(config_schema());
  EXPECT_EQ(s["type"], "object");
  EXPECT_TRUE(s["properties"].contains("tolerances"));
}

TEST(Run, ThreeQubitReport) {
  const auto req = parse_config(json{
      {"model", "isotropic"}, {"n_qubits", 3},
      {"tasks", {"closure", "decompose", "codes", "universality", "efficiency"}}});
  const auto r = run(req);
  ASSERT_EQ(r.exit_code, 0) << r.document.dump(2);
  const json& d = r.document;
  EXPECT_EQ(d["schema"], "eun-report/1");
  EXPECT_EQ(d["closure"]["algebra_dim"], 4);
  EXPECT_EQ(d["closure"]["center_dim"], 1);
  EXPECT_EQ(d["decompose"]["signature"],
            json::parse(R"([{"d":2,"n":2},{"d":1,"n":4}])"));
  EXPECT_EQ(d["universality"][0]["verdict"], "full");
  EXPECT_EQ(d["efficiency"]["max_efficiency"].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(d["request"]["seed"], 0);
  const auto& amp = d["codes"][0]["terms"][0][0];
  EXPECT_EQ(amp["state"], "|010>");
  EXPECT_NEAR(amp["amplitude"][0].get<double>(), 1 / std::sqrt(2.0), 1e-12);
}

TEST(Run, ScalingOnly) {
  const auto req = parse_config(json{{"tasks", {"scaling"}}});
  const auto r = run(req);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(r.document["scaling"]["slope"].get<double>(), -1.0, 0.1);
  EXPECT_FALSE(r.document.contains("closure"));
}

TEST(Run, FailedTaskIsRecorded) {
  // Every decomposition draw is ambiguous; commutant still runs.
  auto req = parse_config(json{{"model", "isotropic"}, {"n_qubits", 3},
                               {"tasks", {"closure", "commutant", "decompose"}}});
  req.tolerances.cluster_gap = 0.9;
  const auto r = run(req);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_TRUE(r.document["decompose"].contains("error"));
  EXPECT_EQ(r.document["commutant"]["commutant_dim"], 20);
  const std::string text = canonical_dump(r.document);
  EXPECT_NE(text.find("\"error\""), std::string::npos);
}

TEST(Run, ResourceLimitExitCode) {
  auto req = parse_config(json{{"model", "isotropic"}, {"n_qubits", 3},
                               {"tasks", {"commutant"}}});
  req.max_qubits = 2;
  const auto r = run(req);
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_EQ(r.document["commutant"]["error"]["kind"], "resource_limit");
}

TEST(Run, EmptyTaskListEchoesRequest) {
  const auto r = run(parse_config(json{{"model", "isotropic"}, {"n_qubits", 2}}));
  EXPECT_EQ(r.exit_code, 0);
  std::set<std::string> keys;
  for (const auto& [k, v] : r.document.items()) keys.insert(k);
  EXPECT_EQ(keys, (std::set<std::string>{"request", "schema", "tool_version"}));
}

TEST(Run, TimingsOnlyWhenAsked) {
  auto req = parse_config(json{{"model", "isotropic"}, {"n_qubits", 2},
                               {"tasks", {"commutant"}}});
  EXPECT_FALSE(run(req).document.contains("timings"));
  req.timings = true;
  EXPECT_TRUE(run(req).document.contains("timings"));
}

TEST(CanonicalDump, FormatAndDeterminism) {
  const json doc = {{"b", 1.0}, {"a", {-0.0, 0.1, 3}}, {"c", "x"}};
  const std::string text = canonical_dump(doc);
  EXPECT_EQ(text,
            "{\n  \"a\": [0.0000000000000000e+00, 1.0000000000000001e-01, 3],\n"
            "  \"b\": 1.0000000000000000e+00,\n  \"c\": \"x\"\n}\n");
  const auto req = parse_config(json{{"model", "isotropic"}, {"n_qubits", 4},
                                     {"tasks", {"codes"}}, {"seed", 5}});
  EXPECT_EQ(canonical_dump(run(req).document), canonical_dump(run(req).document));
}

TEST(Emit, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "eun_emit_test.json";
  AnalysisReport r{json{{"k", 1}}, 0};
  emit(r, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "{\n  \"k\": 1\n}\n");
  std::filesystem::remove(path);
  EXPECT_THROW(emit(r, "/nonexistent-dir/x.json"), Error);
}

TEST(BasisLabel, MostSignificantFirst) {
  EXPECT_EQ(basis_label(1, 3), "|001>");
  EXPECT_EQ(basis_label(4, 3), "|100>");
}

}  // namespace
}  // namespace eun
