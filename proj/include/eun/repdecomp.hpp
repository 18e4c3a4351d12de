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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eun/hermitian.hpp"
#include "eun/pauli.hpp"

namespace eun {

inline constexpr double kDefaultCommutantTolerance = 1e-9;
inline constexpr double kDefaultSubspaceTolerance = 1e-7;
inline constexpr double kDefaultClusterGap = 1e-6;
inline constexpr int kDefaultMaxRetries = 8;
/// Upper bound on the number of real unknowns in the commutant solve.
inline constexpr std::size_t kDefaultCommutantWorkspace = 8192;

/// Hermitian operators commuting with every generator, orthonormal under
/// Tr(AB)/dim. The commutant is closed under adjoints, so the count of
/// Hermitian basis elements equals its complex dimension.
struct CommutantBasis {
  Index dimension = 0;
  std::vector<HermitianOperator> basis;

  std::size_t complex_dimension() const noexcept { return basis.size(); }
};

/// Kernel of sum_m ad_{G_m}^dag ad_{G_m} on Hermitian operators.
///
/// The kernel lies inside the centralizer of a fixed generic combination
/// H = sum_m c_m G_m, i.e. the matrices block-diagonal in H's eigenbasis,
/// so the Gram operator is assembled only on that subspace (nearby
/// eigenvalues are merged, which can only enlarge it).
///
/// Throws Error(resource_limit) if the centralizer has more than
/// `max_workspace` real dimensions.
CommutantBasis commutant(std::span<const HermitianOperator> generators,
                         double tol = kDefaultCommutantTolerance,
                         std::size_t max_workspace = kDefaultCommutantWorkspace);

/// ||(I - VV^dag) G V||_F relative to the RMS eigenvalue of G.
double leakage(const HermitianOperator& g, const CMatrix& subspace);

/// V^dag G V for column-orthonormal V; throws Error(tolerance) when the
/// subspace leaks above `tol`.
HermitianOperator restrict_to(const HermitianOperator& g,
                              const CMatrix& subspace,
                              double tol = kDefaultSubspaceTolerance);

/// Dimension of {X : X (V_A^dag G V_A) = (V_B^dag G V_B) X for all G}.
int intertwiner_dim(const CMatrix& sub_a, const CMatrix& sub_b,
                    std::span<const HermitianOperator> generators,
                    double tol = kDefaultCommutantTolerance,
                    double subspace_tol = kDefaultSubspaceTolerance);

/// One isotypic component: n_J mutually orthogonal copies of a d_J-dim
/// irreducible subspace on which every generator acts by the same matrix.
struct IsotypicComponent {
  int label = 0;
  int irrep_dim = 0;
  int multiplicity = 0;
  /// Copies in gauge order (D x d_J each, canonical irrep basis).
  std::vector<CMatrix> subspaces;
  /// Same copies in discovery order, before the gauge rotation.
  std::vector<CMatrix> discovery_subspaces;
  /// Gauge eigenvalue per copy (descending); empty when no gauge applied.
  std::vector<double> gauge_values;
  bool gauge_applied = false;
  /// Generator restrictions in the canonical irrep basis (copy-independent).
  std::vector<HermitianOperator> irrep_action;
};

struct IrrepDecomposition {
  /// Sorted by irrep dimension, then multiplicity, both descending.
  std::vector<IsotypicComponent> components;
  /// Columns: components in order, copies in order, irrep basis in order,
  /// so generators become (+)_J I_{n_J} (x) L_J.
  CMatrix block_unitary;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::size_t commutant_dimension = 0;
  std::vector<HermitianOperator> generators;
  std::optional<OperatorExpression> gauge_observable;

  std::vector<std::pair<int, int>> signature() const;
  const IsotypicComponent& component(int label) const;
};

struct DecomposeOptions {
  std::uint64_t seed = 0;
  double tol = kDefaultCommutantTolerance;
  double subspace_tol = kDefaultSubspaceTolerance;
  double cluster_gap = kDefaultClusterGap;
  int max_retries = kDefaultMaxRetries;
  std::size_t max_workspace = kDefaultCommutantWorkspace;
  /// Gauge observable; defaults to sum_k Z_k when the dimension is 2^n.
  std::optional<OperatorExpression> gauge_observable;
  bool default_gauge = true;
};

/// Irreducible decomposition from eigenspaces of a seeded random element
/// of the commutant. Throws Error(retry_exhausted) when no draw yields a
/// clean split within the retry budget.
IrrepDecomposition decompose(std::span<const HermitianOperator> generators,
                             const DecomposeOptions& options = {});

/// Re-orders the copies of `component` by descending eigenvalue of the
/// observable compressed onto the multiplicity space. Returns false (and
/// restores discovery order) when the observable does not act as M (x) I
/// on the component.
bool apply_gauge(IsotypicComponent& component,
                 const HermitianOperator& observable,
                 double tol = kDefaultSubspaceTolerance);

/// Unitary that diagonalizes the designated restriction (largest spectral
/// range, first on ties) with ascending eigenvalues, refines degenerate
/// eigenspaces with the remaining restrictions, and fixes phases so the
/// first nonzero off-diagonal of the following restriction is positive.
CMatrix canonical_irrep_basis(std::span<const CMatrix> restrictions);

}  // namespace eun
