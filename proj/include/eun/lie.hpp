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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eun/hermitian.hpp"

namespace eun {

inline constexpr double kDefaultClosureTolerance = 1e-9;

/// Tr(AB)/dim. The imaginary residue of the trace must be below 1e-12.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

/// Orthonormal basis (under hs_inner) of a real Lie algebra of Hermitian
/// operators with bracket i[A, B].
struct LieAlgebraBasis {
  /// log2 of the operator dimension, or 0 when it is not a power of two.
  int n_qubits = 0;
  Index operator_dim = 0;
  std::vector<HermitianOperator> basis;
  double closure_tolerance = kDefaultClosureTolerance;
  std::size_t generator_count = 0;
  bool closed = false;

  std::size_t size() const noexcept { return basis.size(); }
};

/// Smallest real Lie algebra containing `generators`.
///
/// Generators are orthonormalized in order, then i[b_i, b_j] is evaluated
/// for pairs in FIFO order (initial pairs lexicographic, then (old, new)
/// for each appended element). A residual survives when its norm exceeds
/// tol times max(1, bracket norm); basis elements have unit norm, so the
/// floor keeps near-cancelling brackets from admitting rounding noise. Brackets are evaluated in parallel
/// batches; insertion stays sequential, so the basis is independent of the
/// thread count.
///
/// Throws Error(resource_limit) past `max_dim` (default 4^n, or dim^2).
LieAlgebraBasis lie_closure(std::span<const HermitianOperator> generators,
                            double tol = kDefaultClosureTolerance,
                            std::optional<std::size_t> max_dim = std::nullopt);

struct Membership {
  bool contained = false;
  double residual = 0.0;  // relative to the candidate's norm
};

Membership contains(const LieAlgebraBasis& algebra,
                    const HermitianOperator& candidate,
                    double tol = kDefaultClosureTolerance);

/// Orthonormal basis of {X in span(basis) : [X, b_j] = 0 for all j}.
std::vector<HermitianOperator> center_of(
    const LieAlgebraBasis& algebra, double tol = kDefaultClosureTolerance);

/// Largest relative residual of i[b_i, b_j] outside the span, over all
/// pairs. Zero for a closed algebra up to rounding.
double bracket_closure_defect(const LieAlgebraBasis& algebra);

/// Coordinates of `op` along an orthonormal basis.
RVector coordinates(std::span<const HermitianOperator> basis,
                    const HermitianOperator& op);

/// Orthonormal basis of the null space of a symmetric positive
/// semidefinite matrix: eigenvectors whose eigenvalue is at most
/// rel_tol * max(largest eigenvalue, floor).
RMatrix psd_kernel(const RMatrix& gram, double rel_tol, double floor = 0.0);

}  // namespace eun
