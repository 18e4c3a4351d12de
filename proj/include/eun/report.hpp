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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eun/pauli.hpp"
#include "eun/product_formula.hpp"

namespace eun {

inline constexpr std::string_view kReportSchema = "eun-report/1";
inline constexpr std::string_view kToolVersion = EUN_VERSION;

enum class Task {
  closure,
  commutant,
  decompose,
  codes,
  universality,
  conjoin,
  efficiency,
  scaling,
};

std::string_view to_string(Task t);
Task parse_task(std::string_view name);

/// Adds every task a requested task depends on.
std::set<Task> with_dependencies(const std::set<Task>& tasks);

struct Tolerances {
  double closure = 1e-9;
  double commutant = 1e-9;
  double subspace = 1e-7;
  double cluster_gap = 1e-6;

  /// Throws Error(config) for unknown names or non-positive values.
  void set(std::string_view name, double value);
};

struct ScalingRequest {
  FormulaKind kind = FormulaKind::trotter;
  std::string a = "X";
  std::string b = "Z";
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<int> n_list;  // empty: default for the kind
};

std::vector<int> default_n_list(FormulaKind kind);

struct ConjoinRequest {
  std::optional<int> component;  // default: largest irrep with d >= 2
  std::string couplings = "all-pairs";
};

struct AnalysisRequest {
  HamiltonianSpec spec;
  std::string couplings_label = "all-pairs";
  std::set<Task> tasks;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::string output_path;
  ScalingRequest scaling;
  ConjoinRequest conjoin;
  std::optional<OperatorExpression> gauge_observable;
  int max_qubits = kDefaultMaxQubits;
  bool timings = false;
};

/// Builds couplings for "all-pairs", "chain" or an edge list "1-2,2-3".
std::vector<Coupling> couplings_from_label(Model model, int n_qubits,
                                           std::string_view label);

/// Validates a JSON config (keys: model, n_qubits, couplings, custom,
/// tasks, seed, tolerances, output, plus optional scaling, conjoin,
/// gauge_observable, max_qubits). Errors carry the offending key path.
AnalysisRequest parse_config(const nlohmann::json& config);
AnalysisRequest parse_config(const std::filesystem::path& path);

/// JSON schema of the config file.
std::string config_schema();

struct AnalysisReport {
  nlohmann::json document;
  /// 0 ok, 3 some task failed, 4 some task hit a resource limit.
  int exit_code = 0;
};

/// Runs the requested tasks in dependency order. A failing task records
/// {"error": {...}} in its section; tasks that depend on it do the same.
AnalysisReport run(const AnalysisRequest& request);

/// Sorted keys, two-space indentation, floats as %.16e.
std::string canonical_dump(const nlohmann::json& doc);

/// Writes canonical_dump(report) to `path` ("-" for stdout).
void emit(const AnalysisReport& report, const std::string& path);

/// Basis-state label |q1...qn>.
std::string basis_label(Index index, int n_qubits);

}  // namespace eun
