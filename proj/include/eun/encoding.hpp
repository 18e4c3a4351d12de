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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eun/hermitian.hpp"
#include "eun/lie.hpp"
#include "eun/pauli.hpp"
#include "eun/repdecomp.hpp"

namespace eun {

/// Logical space housed in the irrep factor of one multiplicity copy.
struct Code {
  int n_qubits = 0;
  int logical_dim = 0;
  /// 2^n x d, orthonormal columns |0_L>, |1_L>, ...
  CMatrix logical_basis;
  /// Source isotypic component; -1 for conjoined codes.
  int component_label = -1;
  /// Multiplicity copy; -1 for conjoined codes.
  int gauge_index = -1;
  std::optional<OperatorExpression> gauge_observable;
  bool gauge_applied = false;
};

/// The su(2) basis of the three-qubit exchange algebra on qubits
/// (offset, offset+1, offset+2), 1-based:
///   H0 = E12 + E23 + E13
///   H1 = (E13 - E23) / (4 sqrt3)
///   H3 = (-2 E12 + E23 + E13) / 12
///   H2 = i[H1, H3]
/// With this orientation [H_a, H_b] = i eps_abc H_c.
struct EncodedGeneratorSet {
  int offset = 1;
  int n_qubits = 3;
  HermitianOperator h0;
  HermitianOperator h1;
  HermitianOperator h2;
  HermitianOperator h3;
};

EncodedGeneratorSet build_su2_generators(int block_offset, int n_qubits);

/// Code from multiplicity copy `gauge_index` of a component. A gauge
/// observable other than the decomposition's re-orders the copies; if it
/// does not act as M (x) I on the component, discovery order is kept and
/// `gauge_applied` is false.
Code extract_code(const IrrepDecomposition& decomp, int component_label,
                  int gauge_index,
                  const std::optional<OperatorExpression>& gauge_observable =
                      std::nullopt);

/// Restriction of `h` to the code in the logical basis.
HermitianOperator encoded_action(const Code& code, const HermitianOperator& h,
                                 double tol = kDefaultSubspaceTolerance);

enum class Verdict { full, abelian_trivial, partial };

std::string_view to_string(Verdict v);

struct UniversalityVerdict {
  int logical_dim = 0;
  std::size_t achieved_algebra_dim = 0;
  std::size_t required = 0;  // d^2 - 1
  bool irreducible = false;
  Verdict verdict = Verdict::abelian_trivial;
  std::map<std::string, double> residuals;
};

/// Classifies the Lie algebra generated by the traceless parts of d x d
/// Hermitian matrices against su(d).
UniversalityVerdict classify_restricted(std::span<const HermitianOperator> ops,
                                        double tol = kDefaultClosureTolerance);

UniversalityVerdict verify_irrep_universality(
    const IrrepDecomposition& decomp, int component_label,
    std::span<const HermitianOperator> generators,
    double tol = kDefaultClosureTolerance);

/// log2(d) / n.
double efficiency(int logical_dim, int n_qubits);
/// 1 - (3/2) log2(n) / n.
double efficiency_bound(int n_qubits);

/// Tensor-product code on n_A + n_B qubits, A-index major.
Code conjoin(const Code& a, const Code& b);

/// Orthonormal basis of {A in span(algebra) : (I - P) A P = 0}.
std::vector<HermitianOperator> leakage_preserving_subalgebra(
    const LieAlgebraBasis& algebra, const Code& code,
    double tol = kDefaultClosureTolerance);

UniversalityVerdict check_encoded_universality(
    std::span<const HermitianOperator> generators, const Code& code,
    double tol = kDefaultClosureTolerance);

/// ||Q^dag V||_F^2 / d, Q spanning every copy of the listed components.
double projection_weight(const Code& code, const IrrepDecomposition& decomp,
                         std::span<const int> component_labels);

}  // namespace eun
