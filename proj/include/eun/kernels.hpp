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

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; both perform the same floating-point operations per
// output element, so their results agree bit-for-bit.

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "eun/hermitian.hpp"

namespace eun::kernels {

/// Re Tr(A^dag B) over all entries; Tr(AB) for Hermitian A.
double real_dot(const CMatrix& a, const CMatrix& b);

/// Normalized Hilbert-Schmidt inner product Tr(AB)/dim for Hermitian A, B.
inline double hs_dot(const CMatrix& a, const CMatrix& b) {
  return real_dot(a, b) / static_cast<double>(a.rows());
}

struct BracketCandidate {
  CMatrix residual;            // i[b_i, b_j] minus its projection
  double input_norm = 0.0;     // HS norm of i[b_i, b_j]
  double residual_norm = 0.0;  // HS norm of residual
};

using IndexPair = std::pair<std::size_t, std::size_t>;

/// For each pair forms i[b_i, b_j] and removes its components along
/// basis[0, prefix) by modified Gram-Schmidt (one pass, in index order).
namespace serial {
std::vector<BracketCandidate> bracket_residuals(
    std::span<const HermitianOperator> basis, std::size_t prefix,
    std::span<const IndexPair> pairs);
}
namespace parallel {
std::vector<BracketCandidate> bracket_residuals(
    std::span<const HermitianOperator> basis, std::size_t prefix,
    std::span<const IndexPair> pairs);
}

/// Coordinates of i[b_k, b_j] along an orthonormal basis, for all k < j.
/// Column (k * size + j) holds the coordinates; columns with k >= j are
/// filled by antisymmetry (zero on the diagonal).
namespace serial {
RMatrix structure_constants(std::span<const HermitianOperator> basis);
}
namespace parallel {
RMatrix structure_constants(std::span<const HermitianOperator> basis);
}

/// A Hermitian matrix with at most two nonzero entries:
/// E_aa, (E_ab + E_ba)/sqrt2 or i(E_ab - E_ba)/sqrt2.
struct ElementaryHermitian {
  struct Entry {
    Index row = 0;
    Index col = 0;
    Complex value;
  };
  std::array<Entry, 2> entries{};
  int count = 0;
};

/// Orthonormal (Frobenius) basis of Hermitian matrices supported on the
/// diagonal blocks [starts[k], starts[k] + sizes[k]).
std::vector<ElementaryHermitian> block_hermitian_basis(
    std::span<const Index> starts, std::span<const Index> sizes);

CMatrix to_dense(const ElementaryHermitian& e, Index dim);

/// Gram matrix N_pq = sum_m <[X_p, G_m], [X_q, G_m]>_F of the commutator
/// maps restricted to span{X_p}. `squares[m]` must equal G_m^2.
namespace serial {
RMatrix commutator_gram(std::span<const ElementaryHermitian> params,
                        std::span<const CMatrix> gens,
                        std::span<const CMatrix> squares);
}
namespace parallel {
RMatrix commutator_gram(std::span<const ElementaryHermitian> params,
                        std::span<const CMatrix> gens,
                        std::span<const CMatrix> squares);
}

}  // namespace eun::kernels
