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

// eun command-line front end. Flag-driven subcommands build the same JSON
// config that `analyze --config` reads, so validation has one code path.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eun/error.hpp"
#include "eun/report.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitResource = 4;

struct ModelFlags {
  std::string model = "isotropic";
  int qubits = 3;
  std::string couplings = "all-pairs";
  std::vector<std::string> custom;
};

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::vector<std::string> tol;
  std::optional<int> max_qubits;
  bool timings = false;
};

void add_model_flags(CLI::App* app, ModelFlags& m) {
  app->add_option("--model", m.model, "isotropic, anisotropic, xy or custom")
      ->capture_default_str();
  app->add_option("--qubits", m.qubits, "Number of qubits")->capture_default_str();
  app->add_option("--couplings", m.couplings,
                  "all-pairs, chain, or an edge list such as 1-2,2-3")
      ->capture_default_str();
  app->add_option("--expr", m.custom,
                  "Pauli expression generator (repeatable, model custom)");
}

void add_common_flags(CLI::App* app, CommonFlags& c) {
  app->add_option("--seed", c.seed, "Seed for randomized steps (default 0)");
  app->add_option("--out", c.out, "Report path, '-' for stdout")
      ->capture_default_str();
  app->add_option("--tol", c.tol, "Override a tolerance, NAME=VAL (repeatable)");
  app->add_option("--max-qubits", c.max_qubits, "Register size limit");
  app->add_flag("--timings", c.timings, "Include wall-clock timings");
}

json model_config(const ModelFlags& m) {
  json cfg{{"model", m.model}, {"n_qubits", m.qubits}};
  if (m.model == "custom") {
    cfg["custom"] = m.custom;
  } else {
    cfg["couplings"] = m.couplings;
  }
  return cfg;
}

void apply_common(json& cfg, const CommonFlags& c) {
  if (c.seed) cfg["seed"] = *c.seed;
  if (c.max_qubits) cfg["max_qubits"] = *c.max_qubits;
  for (const auto& item : c.tol) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw eun::Error(eun::ErrorKind::config,
                       "--tol: expected NAME=VAL, got '" + item + "'");
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw eun::Error(eun::ErrorKind::config,
                       "--tol: bad number in '" + item + "'");
    }
    cfg["tolerances"][item.substr(0, eq)] = value;
  }
}

int run_config(const json& cfg, const CommonFlags& c, bool out_given) {
  eun::AnalysisRequest req = eun::parse_config(cfg);
  req.timings = c.timings;
  std::string path = req.output_path.empty() ? "-" : req.output_path;
  if (out_given) path = c.out;
  const eun::AnalysisReport report = eun::run(req);
  eun::emit(report, path);
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eun: Lie closure, irrep decomposition and encoded universality "
               "for qubit Hamiltonians"};
  app.set_version_flag("--version", std::string(eun::kToolVersion));
  app.require_subcommand(1);

  CommonFlags common;
  ModelFlags model;

  auto* analyze = app.add_subcommand("analyze", "Run the tasks listed in a config file");
  std::string config_path;
  analyze->add_option("--config", config_path, "JSON config file")->required();
  add_common_flags(analyze, common);

  auto* decompose = app.add_subcommand("decompose", "Irrep decomposition of a model");
  auto* closure = app.add_subcommand("closure", "Lie closure and center of a model");
  auto* code = app.add_subcommand("code", "Extract codes and check universality");
  for (auto* sub : {decompose, closure, code}) {
    add_model_flags(sub, model);
    add_common_flags(sub, common);
  }

  auto* scaling = app.add_subcommand("scaling", "Product-formula error scaling");
  std::string kind = "trotter";
  std::string op_a = "X";
  std::string op_b = "Z";
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<int> n_list;
  scaling->add_option("--kind", kind, "trotter or commutator")->capture_default_str();
  scaling->add_option("-a,--op-a", op_a, "First operator (Pauli expression)")
      ->capture_default_str();
  scaling->add_option("-b,--op-b", op_b, "Second operator (Pauli expression)")
      ->capture_default_str();
  scaling->add_option("--alpha", alpha, "Coefficient of the first operator");
  scaling->add_option("--beta", beta, "Coefficient of the second operator");
  scaling->add_option("--n", n_list, "Step counts (ascending, at least 4)");
  add_common_flags(scaling, common);

  auto* schema = app.add_subcommand("print-config-schema", "Print the config JSON schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (schema->parsed()) {
      std::cout << eun::config_schema();
      return 0;
    }
    if (analyze->parsed()) {
      json cfg;
      {
        std::ifstream in(config_path);
        if (!in) {
          throw eun::Error(eun::ErrorKind::config,
                           "cannot open config file '" + config_path + "'");
        }
        try {
          cfg = json::parse(in);
        } catch (const json::parse_error& e) {
          throw eun::Error(eun::ErrorKind::config,
                           config_path + ": malformed JSON: " + e.what());
        }
      }
      apply_common(cfg, common);
      return run_config(cfg, common, analyze->count("--out") > 0);
    }
    json cfg;
    CLI::App* used = nullptr;
    if (scaling->parsed()) {
      used = scaling;
      cfg["tasks"] = {"scaling"};
      cfg["scaling"] = {{"kind", kind}, {"a", op_a}, {"b", op_b},
                        {"alpha", alpha}, {"beta", beta}};
      if (!n_list.empty()) cfg["scaling"]["n_list"] = n_list;
    } else {
      cfg = model_config(model);
      if (decompose->parsed()) {
        used = decompose;
        cfg["tasks"] = {"decompose"};
      } else if (closure->parsed()) {
        used = closure;
        cfg["tasks"] = {"closure"};
      } else {
        used = code;
        cfg["tasks"] = {"codes", "universality", "efficiency"};
      }
    }
    apply_common(cfg, common);
    return run_config(cfg, common, used->count("--out") > 0);
  } catch (const eun::Error& e) {
    std::cerr << "eun: " << e.what() << "\n";
    if (e.kind() == eun::ErrorKind::resource_limit) return kExitResource;
    if (e.kind() == eun::ErrorKind::io) return 3;
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "eun: " << e.what() << "\n";
    return 3;
  }
}
