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

#include "eun/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "eun/encoding.hpp"
#include "eun/error.hpp"
#include "eun/lie.hpp"
#include "eun/repdecomp.hpp"

namespace eun {

using nlohmann::json;

namespace {

constexpr Task kAllTasks[] = {Task::closure,      Task::commutant,
                              Task::decompose,    Task::codes,
                              Task::universality, Task::conjoin,
                              Task::efficiency,   Task::scaling};

[[noreturn]] void config_error(const std::string& path,
                               const std::string& msg) {
  throw Error(ErrorKind::config, path + ": " + msg);
}

}  // namespace

std::string_view to_string(Task t) {
  switch (t) {
    case Task::closure: return "closure";
    case Task::commutant: return "commutant";
    case Task::decompose: return "decompose";
    case Task::codes: return "codes";
    case Task::universality: return "universality";
    case Task::conjoin: return "conjoin";
    case Task::efficiency: return "efficiency";
    case Task::scaling: return "scaling";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : kAllTasks) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorKind::config, "unknown task '" + std::string(name) + "'");
}

std::set<Task> with_dependencies(const std::set<Task>& tasks) {
  std::set<Task> out = tasks;
  // Iterate to a fixed point; the rules form a short chain.
  for (bool changed = true; changed;) {
    changed = false;
    auto need = [&](Task if_present, Task add) {
      if (out.count(if_present) && !out.count(add)) {
        out.insert(add);
        changed = true;
      }
    };
    need(Task::conjoin, Task::codes);
    need(Task::codes, Task::decompose);
    need(Task::universality, Task::decompose);
    need(Task::efficiency, Task::decompose);
    need(Task::decompose, Task::closure);
  }
  return out;
}

void Tolerances::set(std::string_view name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::config, "tolerance '" + std::string(name) +
                                       "' must be a positive finite number");
  }
  if (name == "closure") closure = value;
  else if (name == "commutant") commutant = value;
  else if (name == "subspace") subspace = value;
  else if (name == "cluster_gap") cluster_gap = value;
  else throw Error(ErrorKind::config, "unknown tolerance '" + std::string(name) + "'");
}

std::vector<int> default_n_list(FormulaKind kind) {
  std::vector<int> out;
  const int first = kind == FormulaKind::trotter ? 8 : 16;
  const int last = kind == FormulaKind::trotter ? 1024 : 4096;
  for (int n = first; n <= last; n *= 2) out.push_back(n);
  return out;
}

std::vector<Coupling> couplings_from_label(Model model, int n_qubits,
                                           std::string_view label) {
  const Coupling unit = unit_coupling(model, 1, 2);
  if (label == "all-pairs") {
    return all_pairs(n_qubits, unit.jx, unit.jy, unit.jz);
  }
  if (label == "chain") return chain(n_qubits, unit.jx, unit.jy, unit.jz);
  std::vector<Coupling> out;
  std::string text(label);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int i = 0;
    int j = 0;
    char dash = 0;
    std::istringstream is(item);
    if (!(is >> i >> dash >> j) || dash != '-' || !(is >> std::ws).eof()) {
      throw Error(ErrorKind::config,
                  "couplings: expected 'all-pairs', 'chain' or an edge list "
                  "like '1-2,2-3', got '" + text + "'");
    }
    if (i > j) std::swap(i, j);
    Coupling c = unit_coupling(model, i, j);
    out.push_back(c);
  }
  if (out.empty()) {
    throw Error(ErrorKind::config, "couplings: empty edge list");
  }
  return out;
}

namespace {

int infer_register_size(std::string_view text) {
  int best = 0;
  int run = 0;
  for (char c : text) {
    if (c == 'I' || c == 'X' || c == 'Y' || c == 'Z') {
      ++run;
    } else {
      if (run > 0) return run;
    }
    best = run;
  }
  return best;
}

const json& require_key(const json& obj, const std::string& key,
                        const std::string& path) {
  if (!obj.contains(key)) config_error(path, "missing required key '" + key + "'");
  return obj.at(key);
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) config_error(path, "expected an integer");
  return v.get<int>();
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) config_error(path, "expected a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) config_error(path, "expected a string");
  return v.get<std::string>();
}

Coupling parse_edge(const json& e, Model model, const std::string& path) {
  Coupling c;
  if (e.is_array()) {
    if (e.size() != 2 && e.size() != 3 && e.size() != 5) {
      config_error(path, "edge arrays are [i, j], [i, j, J] or [i, j, JX, JY, JZ]");
    }
    c = unit_coupling(model, as_int(e[0], path + "[0]"), as_int(e[1], path + "[1]"));
    if (e.size() == 3) {
      const double j = as_number(e[2], path + "[2]");
      c.jx = j;
      c.jy = j;
      c.jz = model == Model::xy ? 0.0 : j;
    } else if (e.size() == 5) {
      c.jx = as_number(e[2], path + "[2]");
      c.jy = as_number(e[3], path + "[3]");
      c.jz = as_number(e[4], path + "[4]");
    }
    return c;
  }
  if (!e.is_object()) config_error(path, "expected an edge array or object");
  for (const auto& [k, v] : e.items()) {
    if (k != "i" && k != "j" && k != "J" && k != "jx" && k != "jy" && k != "jz") {
      config_error(path + "." + k, "unknown edge key");
    }
  }
  c = unit_coupling(model, as_int(require_key(e, "i", path), path + ".i"),
                    as_int(require_key(e, "j", path), path + ".j"));
  if (e.contains("J")) {
    const double j = as_number(e.at("J"), path + ".J");
    c.jx = j;
    c.jy = j;
    c.jz = model == Model::xy ? 0.0 : j;
  }
  if (e.contains("jx")) c.jx = as_number(e.at("jx"), path + ".jx");
  if (e.contains("jy")) c.jy = as_number(e.at("jy"), path + ".jy");
  if (e.contains("jz")) c.jz = as_number(e.at("jz"), path + ".jz");
  return c;
}

}  // namespace

AnalysisRequest parse_config(const json& config) {
  if (!config.is_object()) config_error("$", "config must be an object");
  static const std::set<std::string> known = {
      "model",      "n_qubits", "couplings", "custom",
      "tasks",      "seed",     "tolerances", "output",
      "scaling",    "conjoin",  "gauge_observable", "max_qubits"};
  for (const auto& [k, v] : config.items()) {
    if (!known.count(k)) config_error("$." + k, "unknown key");
  }

  AnalysisRequest req;
  const bool scaling_only = [&] {
    if (!config.contains("tasks") || !config.at("tasks").is_array()) return false;
    for (const auto& t : config.at("tasks")) {
      if (!t.is_string() || t.get<std::string>() != "scaling") return false;
    }
    return !config.at("tasks").empty();
  }();

  if (config.contains("max_qubits")) {
    req.max_qubits = as_int(config.at("max_qubits"), "$.max_qubits");
    if (req.max_qubits < 1) config_error("$.max_qubits", "must be positive");
  }

  if (config.contains("model") || !scaling_only) {
    try {
      req.spec.model = parse_model(
          as_string(require_key(config, "model", "$"), "$.model"));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::config && std::string(e.what()).rfind("$", 0) != 0) {
        config_error("$.model", e.what());
      }
      throw;
    }
    req.spec.n_qubits =
        as_int(require_key(config, "n_qubits", "$"), "$.n_qubits");
    if (req.spec.n_qubits < 1) config_error("$.n_qubits", "must be positive");
    if (req.spec.n_qubits > req.max_qubits) {
      config_error("$.n_qubits", "exceeds max_qubits = " +
                                     std::to_string(req.max_qubits));
    }

    if (req.spec.model == Model::custom) {
      const json& custom = require_key(config, "custom", "$");
      if (!custom.is_array() || custom.empty()) {
        config_error("$.custom", "expected a non-empty array of expressions");
      }
      for (std::size_t k = 0; k < custom.size(); ++k) {
        const std::string path = "$.custom[" + std::to_string(k) + "]";
        const std::string text = as_string(custom[k], path);
        try {
          req.spec.custom_expressions.push_back(
              parse_pauli_expression(text, req.spec.n_qubits));
        } catch (const ParseError& e) {
          config_error(path, "bad Pauli expression '" + text + "': " + e.what());
        }
      }
      req.couplings_label = "custom";
    } else {
      if (config.contains("custom")) {
        config_error("$.custom", "only allowed with model 'custom'");
      }
      const json& couplings =
          config.contains("couplings") ? config.at("couplings") : json("all-pairs");
      if (couplings.is_string()) {
        req.couplings_label = couplings.get<std::string>();
        try {
          req.spec.couplings = couplings_from_label(
              req.spec.model, req.spec.n_qubits, req.couplings_label);
        } catch (const Error& e) {
          config_error("$.couplings", e.what());
        }
      } else if (couplings.is_array()) {
        req.couplings_label = "edge-list";
        for (std::size_t k = 0; k < couplings.size(); ++k) {
          req.spec.couplings.push_back(parse_edge(
              couplings[k], req.spec.model,
              "$.couplings[" + std::to_string(k) + "]"));
        }
      } else {
        config_error("$.couplings", "expected a string or an array of edges");
      }
    }
    try {
      req.spec.validate();
    } catch (const Error& e) {
      config_error("$", e.what());
    }
  }

  std::set<Task> tasks;
  if (config.contains("tasks")) {
    const json& t = config.at("tasks");
    if (!t.is_array()) config_error("$.tasks", "expected an array");
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::string path = "$.tasks[" + std::to_string(k) + "]";
      try {
        tasks.insert(parse_task(as_string(t[k], path)));
      } catch (const Error& e) {
        if (std::string(e.what()).rfind("$", 0) == 0) throw;
        config_error(path, e.what());
      }
    }
  }
  req.tasks = with_dependencies(tasks);

  if (config.contains("seed")) {
    const json& s = config.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && s.get<long long>() < 0 &&
                                   !s.is_number_unsigned())) {
      config_error("$.seed", "expected a non-negative integer");
    }
    req.seed = s.get<std::uint64_t>();
  }
  if (config.contains("tolerances")) {
    const json& tol = config.at("tolerances");
    if (!tol.is_object()) config_error("$.tolerances", "expected an object");
    for (const auto& [k, v] : tol.items()) {
      const std::string path = "$.tolerances." + k;
      try {
        req.tolerances.set(k, as_number(v, path));
      } catch (const Error& e) {
        if (std::string(e.what()).rfind("$", 0) == 0) throw;
        config_error(path, e.what());
      }
    }
  }
  if (config.contains("output")) {
    req.output_path = as_string(config.at("output"), "$.output");
  }
  if (config.contains("gauge_observable")) {
    if (req.spec.n_qubits < 1) {
      config_error("$.gauge_observable", "needs a model register");
    }
    const std::string text =
        as_string(config.at("gauge_observable"), "$.gauge_observable");
    try {
      req.gauge_observable = parse_pauli_expression(text, req.spec.n_qubits);
    } catch (const ParseError& e) {
      config_error("$.gauge_observable", e.what());
    }
  }
  if (config.contains("scaling")) {
    const json& s = config.at("scaling");
    if (!s.is_object()) config_error("$.scaling", "expected an object");
    for (const auto& [k, v] : s.items()) {
      const std::string path = "$.scaling." + k;
      if (k == "kind") {
        try {
          req.scaling.kind = parse_formula_kind(as_string(v, path));
        } catch (const Error& e) {
          if (std::string(e.what()).rfind("$", 0) == 0) throw;
          config_error(path, e.what());
        }
      } else if (k == "a") {
        req.scaling.a = as_string(v, path);
      } else if (k == "b") {
        req.scaling.b = as_string(v, path);
      } else if (k == "alpha") {
        req.scaling.alpha = as_number(v, path);
      } else if (k == "beta") {
        req.scaling.beta = as_number(v, path);
      } else if (k == "n_list") {
        if (!v.is_array()) config_error(path, "expected an array");
        for (std::size_t i = 0; i < v.size(); ++i) {
          req.scaling.n_list.push_back(
              as_int(v[i], path + "[" + std::to_string(i) + "]"));
        }
      } else {
        config_error(path, "unknown key");
      }
    }
  }
  if (config.contains("conjoin")) {
    const json& c = config.at("conjoin");
    if (!c.is_object()) config_error("$.conjoin", "expected an object");
    for (const auto& [k, v] : c.items()) {
      const std::string path = "$.conjoin." + k;
      if (k == "component") {
        req.conjoin.component = as_int(v, path);
      } else if (k == "couplings") {
        req.conjoin.couplings = as_string(v, path);
      } else {
        config_error(path, "unknown key");
      }
    }
  }
  return req;
}

AnalysisRequest parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::config, "cannot open config file '" +
                                       path.string() + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config,
                path.string() + ": malformed JSON: " + e.what());
  }
  return parse_config(doc);
}

std::string config_schema() {
  static const char* kSchema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "eun analysis config",
  "type": "object",
  "additionalProperties": false,
  "properties": {
    "model": {"enum": ["isotropic", "anisotropic", "xy", "custom"]},
    "n_qubits": {"type": "integer", "minimum": 1},
    "couplings": {
      "oneOf": [
        {"type": "string", "description": "all-pairs, chain, or an edge list such as 1-2,2-3"},
        {"type": "array", "items": {"oneOf": [
          {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 5},
          {"type": "object", "required": ["i", "j"], "additionalProperties": false,
           "properties": {"i": {"type": "integer"}, "j": {"type": "integer"},
                          "J": {"type": "number"}, "jx": {"type": "number"},
                          "jy": {"type": "number"}, "jz": {"type": "number"}}}
        ]}}
      ]
    },
    "custom": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    "tasks": {"type": "array", "items": {"enum": ["closure", "commutant", "decompose", "codes", "universality", "conjoin", "efficiency", "scaling"]}},
    "seed": {"type": "integer", "minimum": 0},
    "tolerances": {"type": "object", "additionalProperties": false,
      "properties": {"closure": {"type": "number", "exclusiveMinimum": 0},
                     "commutant": {"type": "number", "exclusiveMinimum": 0},
                     "subspace": {"type": "number", "exclusiveMinimum": 0},
                     "cluster_gap": {"type": "number", "exclusiveMinimum": 0}}},
    "output": {"type": "string"},
    "gauge_observable": {"type": "string"},
    "max_qubits": {"type": "integer", "minimum": 1},
    "scaling": {"type": "object", "additionalProperties": false,
      "properties": {"kind": {"enum": ["trotter", "commutator"]},
                     "a": {"type": "string"}, "b": {"type": "string"},
                     "alpha": {"type": "number"}, "beta": {"type": "number"},
                     "n_list": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 4}}},
    "conjoin": {"type": "object", "additionalProperties": false,
      "properties": {"component": {"type": "integer", "minimum": 0},
                     "couplings": {"type": "string"}}}
  }
}
)";
  return kSchema;
}

std::string basis_label(Index index, int n_qubits) {
  std::string s = "|";
  for (int q = n_qubits - 1; q >= 0; --q) {
    s.push_back(((static_cast<std::uint64_t>(index) >> q) & 1U) ? '1' : '0');
  }
  s += ">";
  return s;
}

namespace {

double clean(double x) { return x == 0.0 ? 0.0 : x; }

// Vector and matrix entries below this are rounding residue.
constexpr double kEntryFloor = 1e-13;

double snap(double x) { return std::abs(x) < kEntryFloor ? 0.0 : x; }

json interleaved(const CVector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) {
    out.push_back(snap(v(k).real()));
    out.push_back(snap(v(k).imag()));
  }
  return out;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    rows.push_back(interleaved(m.row(r).transpose()));
  }
  return rows;
}

json error_json(const std::string& kind, const std::string& message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

json verdict_json(const UniversalityVerdict& v) {
  json res = json::object();
  for (const auto& [k, x] : v.residuals) res[k] = clean(x);
  return json{{"logical_dim", v.logical_dim},
              {"achieved_algebra_dim", v.achieved_algebra_dim},
              {"required", v.required},
              {"irreducible", v.irreducible},
              {"verdict", std::string(to_string(v.verdict))},
              {"residuals", res}};
}

json code_json(const Code& code, std::span<const HermitianOperator> gens) {
  json vectors = json::array();
  json terms = json::array();
  for (Index c = 0; c < code.logical_basis.cols(); ++c) {
    const CVector v = code.logical_basis.col(c);
    vectors.push_back(interleaved(v));
    json sparse = json::array();
    for (Index r = 0; r < v.size(); ++r) {
      if (std::abs(v(r)) > 1e-12) {
        sparse.push_back({{"state", basis_label(r, code.n_qubits)},
                          {"amplitude", {snap(v(r).real()), snap(v(r).imag())}}});
      }
    }
    terms.push_back(sparse);
  }
  json actions = json::array();
  for (const auto& g : gens) {
    actions.push_back(matrix_json(encoded_action(code, g).matrix()));
  }
  json out{{"n_qubits", code.n_qubits},
           {"logical_dim", code.logical_dim},
           {"component_label", code.component_label},
           {"gauge_index", code.gauge_index},
           {"gauge_applied", code.gauge_applied},
           {"vectors", vectors},
           {"terms", terms},
           {"encoded_generators", actions}};
  out["gauge_observable"] =
      code.gauge_observable ? json(code.gauge_observable->to_string()) : json(nullptr);
  if (code.n_qubits > 0) {
    out["efficiency"] = efficiency(code.logical_dim, code.n_qubits);
  }
  return out;
}

double block_residual(const IrrepDecomposition& d) {
  double worst = 0.0;
  for (const auto& g : d.generators) {
    const CMatrix t = d.block_unitary.adjoint() * g.matrix() * d.block_unitary;
    CMatrix off = t;
    Index col = 0;
    for (const auto& comp : d.components) {
      for (int k = 0; k < comp.multiplicity; ++k) {
        off.block(col, col, comp.irrep_dim, comp.irrep_dim).setZero();
        col += comp.irrep_dim;
      }
    }
    worst = std::max(worst, off.norm());
  }
  return worst;
}

int pick_conjoin_component(const IrrepDecomposition& d,
                           const std::optional<int>& requested) {
  if (requested) {
    d.component(*requested);
    return *requested;
  }
  for (const auto& c : d.components) {
    if (c.irrep_dim >= 2) return c.label;
  }
  throw Error(ErrorKind::invalid_argument,
              "conjoin: no component with irrep dimension >= 2");
}

class Runner {
 public:
  explicit Runner(const AnalysisRequest& req) : req_(req) {}

  AnalysisReport run() {
    doc_["schema"] = std::string(kReportSchema);
    doc_["tool_version"] = std::string(kToolVersion);
    doc_["request"] = echo();
    for (Task t : kAllTasks) {
      if (!req_.tasks.count(t)) continue;
      const auto start = std::chrono::steady_clock::now();
      json section;
      try {
        section = run_task(t);
        ok_.insert(t);
      } catch (const Error& e) {
        section = error_json(std::string(to_string(e.kind())), e.what());
        note_failure(e.kind());
      } catch (const std::exception& e) {
        section = error_json("internal", e.what());
        note_failure(ErrorKind::invalid_argument);
      }
      doc_[std::string(to_string(t))] = section;
      timings_[std::string(to_string(t))] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
    }
    if (req_.timings) doc_["timings"] = timings_;
    return {doc_, exit_code_};
  }

 private:
  void note_failure(ErrorKind kind) {
    if (kind == ErrorKind::resource_limit) exit_code_ = 4;
    else if (exit_code_ == 0) exit_code_ = 3;
  }

  void require(Task t) {
    if (!ok_.count(t)) {
      throw Error(ErrorKind::invalid_argument,
                  "depends on failed task '" + std::string(to_string(t)) + "'");
    }
  }

  const std::vector<HermitianOperator>& generators() {
    if (!gens_) gens_ = build_model(req_.spec, req_.max_qubits);
    return *gens_;
  }

  json echo() const {
    json r;
    const bool has_model = req_.spec.n_qubits > 0;
    if (has_model) {
      r["model"] = std::string(to_string(req_.spec.model));
      r["n_qubits"] = req_.spec.n_qubits;
      r["couplings_label"] = req_.couplings_label;
      json edges = json::array();
      for (const auto& c : req_.spec.couplings) {
        edges.push_back({{"i", c.i}, {"j", c.j}, {"jx", c.jx}, {"jy", c.jy}, {"jz", c.jz}});
      }
      r["couplings"] = edges;
      json custom = json::array();
      for (const auto& e : req_.spec.custom_expressions) custom.push_back(e.to_string());
      r["custom"] = custom;
    }
    json tasks = json::array();
    for (Task t : kAllTasks) {
      if (req_.tasks.count(t)) tasks.push_back(std::string(to_string(t)));
    }
    r["tasks"] = tasks;
    r["seed"] = req_.seed;
    r["tolerances"] = {{"closure", req_.tolerances.closure},
                       {"commutant", req_.tolerances.commutant},
                       {"subspace", req_.tolerances.subspace},
                       {"cluster_gap", req_.tolerances.cluster_gap}};
    r["max_qubits"] = req_.max_qubits;
    if (req_.gauge_observable) {
      r["gauge_observable"] = req_.gauge_observable->to_string();
    }
    if (req_.tasks.count(Task::scaling)) {
      const auto& s = req_.scaling;
      r["scaling"] = {{"kind", std::string(to_string(s.kind))},
                      {"a", s.a},
                      {"b", s.b},
                      {"alpha", s.alpha},
                      {"beta", s.beta},
                      {"n_list", s.n_list.empty() ? default_n_list(s.kind) : s.n_list}};
    }
    if (req_.tasks.count(Task::conjoin)) {
      r["conjoin"] = {{"couplings", req_.conjoin.couplings},
                      {"component", req_.conjoin.component
                                        ? json(*req_.conjoin.component)
                                        : json(nullptr)}};
    }
    return r;
  }

  DecomposeOptions decompose_options() const {
    DecomposeOptions o;
    o.seed = req_.seed;
    o.tol = req_.tolerances.commutant;
    o.subspace_tol = req_.tolerances.subspace;
    o.cluster_gap = req_.tolerances.cluster_gap;
    o.gauge_observable = req_.gauge_observable;
    return o;
  }

  json run_task(Task t) {
    if (t != Task::scaling && req_.spec.n_qubits < 1) {
      throw Error(ErrorKind::config, "task needs a model");
    }
    switch (t) {
      case Task::closure: {
        const auto algebra = lie_closure(generators(), req_.tolerances.closure);
        const auto center = center_of(algebra, req_.tolerances.closure);
        algebra_dim_ = algebra.size();
        return {{"algebra_dim", algebra.size()},
                {"center_dim", center.size()},
                {"generator_count", algebra.generator_count},
                {"closed", algebra.closed},
                {"closure_tolerance", algebra.closure_tolerance}};
      }
      case Task::commutant: {
        const auto c = commutant(generators(), req_.tolerances.commutant);
        return {{"commutant_dim", c.complex_dimension()}};
      }
      case Task::decompose: {
        decomp_ = decompose(generators(), decompose_options());
        json comps = json::array();
        json sig = json::array();
        std::size_t sum_sq = 0;
        for (const auto& c : decomp_->components) {
          sig.push_back({{"d", c.irrep_dim}, {"n", c.multiplicity}});
          sum_sq += static_cast<std::size_t>(c.irrep_dim * c.irrep_dim);
          json traces = json::array();
          for (const auto& a : c.irrep_action) {
            traces.push_back(clean(a.matrix().trace().real()));
          }
          json gv = json::array();
          for (double v : c.gauge_values) gv.push_back(clean(v));
          comps.push_back({{"label", c.label},
                           {"d", c.irrep_dim},
                           {"n", c.multiplicity},
                           {"gauge_applied", c.gauge_applied},
                           {"gauge_values", gv},
                           {"generator_traces", traces}});
        }
        json out{{"signature", sig},
                 {"components", comps},
                 {"commutant_dim", decomp_->commutant_dimension},
                 {"sum_d_squared", sum_sq},
                 {"attempts", decomp_->attempts},
                 {"seed", decomp_->seed},
                 {"block_residual", clean(block_residual(*decomp_))}};
        if (algebra_dim_) {
          out["algebra_dim_within_bound"] = *algebra_dim_ <= sum_sq;
        }
        return out;
      }
      case Task::codes: {
        require(Task::decompose);
        json codes = json::array();
        codes_.clear();
        for (const auto& c : decomp_->components) {
          Code code = extract_code(*decomp_, c.label, 0, req_.gauge_observable);
          codes.push_back(code_json(code, generators()));
          codes_.push_back(std::move(code));
        }
        return codes;
      }
      case Task::universality: {
        require(Task::decompose);
        json out = json::array();
        for (const auto& c : decomp_->components) {
          json v = verdict_json(verify_irrep_universality(
              *decomp_, c.label, generators(), req_.tolerances.closure));
          v["component_label"] = c.label;
          out.push_back(v);
        }
        return out;
      }
      case Task::conjoin: return run_conjoin();
      case Task::efficiency: {
        require(Task::decompose);
        const int n = req_.spec.n_qubits;
        json rows = json::array();
        double best = 0.0;
        for (const auto& c : decomp_->components) {
          const double e = efficiency(c.irrep_dim, n);
          best = std::max(best, e);
          rows.push_back({{"component_label", c.label},
                          {"d", c.irrep_dim},
                          {"efficiency", clean(e)}});
        }
        json out{{"components", rows}, {"max_efficiency", clean(best)}};
        if (n >= 2) {
          const double bound = efficiency_bound(n);
          out["bound"] = bound;
          out["meets_bound"] = best >= bound;
        } else {
          out["bound"] = nullptr;
        }
        return out;
      }
      case Task::scaling: return run_scaling();
    }
    return json::object();
  }

  json run_conjoin() {
    require(Task::codes);
    if (req_.spec.model == Model::custom) {
      throw Error(ErrorKind::invalid_argument,
                  "conjoin: needs a coupling model, not custom expressions");
    }
    const int label = pick_conjoin_component(*decomp_, req_.conjoin.component);
    const Code& block = codes_.at(static_cast<std::size_t>(label));
    const Code joined = conjoin(block, block);
    HamiltonianSpec spec;
    spec.model = req_.spec.model;
    spec.n_qubits = joined.n_qubits;
    spec.couplings =
        couplings_from_label(spec.model, spec.n_qubits, req_.conjoin.couplings);
    const auto gens = build_model(spec, req_.max_qubits);
    const auto big = decompose(gens, decompose_options());
    json containing = json::array();
    double total = 0.0;
    for (const auto& c : big.components) {
      const int one[] = {c.label};
      const double w = projection_weight(joined, big, one);
      if (w > 1e-9) {
        containing.push_back({{"label", c.label},
                              {"d", c.irrep_dim},
                              {"n", c.multiplicity},
                              {"weight", clean(w)}});
      }
      total += w;
    }
    json sig = json::array();
    for (const auto& c : big.components) {
      sig.push_back({{"d", c.irrep_dim}, {"n", c.multiplicity}});
    }
    const auto verdict =
        check_encoded_universality(gens, joined, req_.tolerances.closure);
    return {{"block_component", label},
            {"n_qubits", joined.n_qubits},
            {"logical_dim", joined.logical_dim},
            {"couplings", req_.conjoin.couplings},
            {"signature", sig},
            {"containing_components", containing},
            {"total_weight", clean(total)},
            {"universality", verdict_json(verdict)}};
  }

  json run_scaling() {
    const auto& s = req_.scaling;
    const int qa = infer_register_size(s.a);
    const int qb = infer_register_size(s.b);
    if (qa < 1 || qa != qb) {
      throw Error(ErrorKind::config,
                  "scaling: operators must act on the same register");
    }
    const auto a = realize(parse_pauli_expression(s.a, qa), req_.max_qubits);
    const auto b = realize(parse_pauli_expression(s.b, qb), req_.max_qubits);
    const std::vector<int> ns = s.n_list.empty() ? default_n_list(s.kind) : s.n_list;
    const ScalingReport r = scaling_study(s.kind, a, b, s.alpha, s.beta, ns);
    json samples = json::array();
    for (auto [n, e] : r.samples) samples.push_back({{"n", n}, {"error", clean(e)}});
    json out{{"kind", std::string(to_string(r.kind))},
             {"samples", samples},
             {"exact", r.exact},
             {"exact_points", r.exact_points}};
    if (!r.exact) {
      out["slope"] = clean(r.slope);
      out["slope_stderr"] = clean(r.slope_stderr);
      out["fitted_points"] = r.fitted_points;
      out["transients_dropped"] = r.transients_dropped;
    }
    return out;
  }

  const AnalysisRequest& req_;
  json doc_ = json::object();
  json timings_ = json::object();
  int exit_code_ = 0;
  std::set<Task> ok_;
  std::optional<std::vector<HermitianOperator>> gens_;
  std::optional<IrrepDecomposition> decomp_;
  std::optional<std::size_t> algebra_dim_;
  std::vector<Code> codes_;
};

void dump_value(const json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump_value(it.value(), indent + 2, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      bool scalars = std::all_of(v.begin(), v.end(), [](const json& x) {
        return x.is_primitive();
      });
      if (scalars) {
        out += "[";
        bool first = true;
        for (const auto& x : v) {
          if (!first) out += ", ";
          first = false;
          dump_value(x, indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& x : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_value(x, indent + 2, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e", x == 0.0 ? 0.0 : x);
      out += buf;
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

AnalysisReport run(const AnalysisRequest& request) {
  return Runner(request).run();
}

std::string canonical_dump(const json& doc) {
  std::string out;
  dump_value(doc, 0, out);
  out += "\n";
  return out;
}

void emit(const AnalysisReport& report, const std::string& path) {
  const std::string text = canonical_dump(report.document);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorKind::io, "emit: failed writing stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "emit: cannot open '" + path + "'");
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::io, "emit: failed writing '" + path + "'");
}

}  // namespace eun
