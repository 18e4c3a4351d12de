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
#include <string>
#include <string_view>
#include <vector>

#include "eun/hermitian.hpp"

namespace eun {

/// Default hard cap on register size for dense realization.
inline constexpr int kDefaultMaxQubits = 12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// One weighted Pauli string; axes[0] acts on qubit 1 (most significant).
struct PauliTerm {
  double coefficient = 1.0;
  std::vector<Pauli> axes;

  std::string axes_string() const;
};

/// Real-weighted sum of Pauli strings on a fixed register. Terms are kept
/// merged (one per axes string), free of exact zeros, and sorted
/// lexicographically by axes string.
class OperatorExpression {
 public:
  OperatorExpression() = default;
  OperatorExpression(int n_qubits, std::vector<PauliTerm> terms);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Canonical text form; parses back to an equal expression.
  std::string to_string() const;

  bool operator==(const OperatorExpression&) const = default;

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

inline bool operator==(const PauliTerm& a, const PauliTerm& b) {
  return a.coefficient == b.coefficient && a.axes == b.axes;
}

/// Parses `[c*]P...P (('+'|'-') [c*]P...P)*` with n letters per string.
/// Throws ParseError carrying the reason and byte position.
OperatorExpression parse_pauli_expression(std::string_view text, int n_qubits);

/// Dense matrix of the expression, qubit 1 as the leftmost Kronecker factor.
HermitianOperator realize(const OperatorExpression& expr,
                          int max_qubits = kDefaultMaxQubits);

/// sigma^i . sigma^j on an n-qubit register (1-based indices).
HermitianOperator build_exchange(int i, int j, int n_qubits);

/// Total magnetization sum_k Z_k as an expression.
OperatorExpression total_z(int n_qubits);

enum class Model { isotropic, anisotropic, xy, custom };

std::string_view to_string(Model m);
Model parse_model(std::string_view name);

struct Coupling {
  int i = 0;
  int j = 0;
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;
};

struct HamiltonianSpec {
  Model model = Model::isotropic;
  int n_qubits = 0;
  std::vector<Coupling> couplings;
  std::vector<OperatorExpression> custom_expressions;

  /// Throws Error(config) on any invariant violation.
  void validate() const;
};

/// Edges (1,2), (1,3), ..., (n-1,n) in lexicographic order.
std::vector<Coupling> all_pairs(int n_qubits, double jx, double jy, double jz);
/// Edges (1,2), (2,3), ..., (n-1,n).
std::vector<Coupling> chain(int n_qubits, double jx, double jy, double jz);

/// Default coupling strengths of a model: (1,1,1) for isotropic and
/// anisotropic, (1,1,0) for xy.
Coupling unit_coupling(Model m, int i, int j);

/// One generator per edge (or per custom expression), in spec order.
std::vector<HermitianOperator> build_model(const HamiltonianSpec& spec,
                                           int max_qubits = kDefaultMaxQubits);

}  // namespace eun
