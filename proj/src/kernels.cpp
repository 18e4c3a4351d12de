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

#include "eun/kernels.hpp"

#include <cmath>

namespace eun::kernels {

double real_dot(const CMatrix& a, const CMatrix& b) {
  const auto n = 2 * a.size();
  Eigen::Map<const RVector> ra(reinterpret_cast<const double*>(a.data()), n);
  Eigen::Map<const RVector> rb(reinterpret_cast<const double*>(b.data()), n);
  return ra.dot(rb);
}

namespace {

BracketCandidate bracket_one(std::span<const HermitianOperator> basis,
                             std::size_t prefix, const IndexPair& p) {
  BracketCandidate out;
  out.residual = lie_bracket(basis[p.first], basis[p.second]).matrix();
  out.input_norm = std::sqrt(std::max(0.0, hs_dot(out.residual, out.residual)));
  for (std::size_t k = 0; k < prefix; ++k) {
    const CMatrix& b = basis[k].matrix();
    const double c = hs_dot(b, out.residual);
    out.residual -= c * b;
  }
  out.residual_norm =
      std::sqrt(std::max(0.0, hs_dot(out.residual, out.residual)));
  return out;
}

template <bool Parallel>
std::vector<BracketCandidate> bracket_residuals_impl(
    std::span<const HermitianOperator> basis, std::size_t prefix,
    std::span<const IndexPair> pairs) {
  std::vector<BracketCandidate> out(pairs.size());
  const auto count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] =
        bracket_one(basis, prefix, pairs[static_cast<std::size_t>(k)]);
  }
  return out;
}

template <bool Parallel>
RMatrix structure_constants_impl(std::span<const HermitianOperator> basis) {
  const auto dim = static_cast<Index>(basis.size());
  RMatrix f = RMatrix::Zero(dim, dim * dim);
  const std::ptrdiff_t total = dim * dim;
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (std::ptrdiff_t kj = 0; kj < total; ++kj) {
    const Index k = kj / dim;
    const Index j = kj % dim;
    if (k >= j) continue;
    const CMatrix x = lie_bracket(basis[static_cast<std::size_t>(k)],
                                  basis[static_cast<std::size_t>(j)])
                          .matrix();
    for (Index l = 0; l < dim; ++l) {
      f(l, k * dim + j) = hs_dot(basis[static_cast<std::size_t>(l)].matrix(), x);
    }
  }
  for (Index k = 0; k < dim; ++k) {
    for (Index j = 0; j < k; ++j) f.col(k * dim + j) = -f.col(j * dim + k);
  }
  return f;
}

// Tr(X A Y B) for elementary X, Y.
double trace_xayb(const ElementaryHermitian& x, const CMatrix& a,
                  const ElementaryHermitian& y, const CMatrix& b) {
  Complex acc = 0.0;
  for (int s = 0; s < x.count; ++s) {
    const auto& ex = x.entries[static_cast<std::size_t>(s)];
    for (int t = 0; t < y.count; ++t) {
      const auto& ey = y.entries[static_cast<std::size_t>(t)];
      acc += ex.value * a(ex.col, ey.row) * ey.value * b(ey.col, ex.row);
    }
  }
  return acc.real();
}

// Re Tr(X Q Y).
double trace_xqy(const ElementaryHermitian& x, const CMatrix& q,
                 const ElementaryHermitian& y) {
  Complex acc = 0.0;
  for (int s = 0; s < x.count; ++s) {
    const auto& ex = x.entries[static_cast<std::size_t>(s)];
    for (int t = 0; t < y.count; ++t) {
      const auto& ey = y.entries[static_cast<std::size_t>(t)];
      if (ey.col != ex.row) continue;
      acc += ex.value * q(ex.col, ey.row) * ey.value;
    }
  }
  return acc.real();
}

// <[X,G],[Y,G]>_F = 2 Re Tr(X G^2 Y) - 2 Tr(X G Y G) for Hermitian X, Y, G.
template <bool Parallel>
RMatrix commutator_gram_impl(std::span<const ElementaryHermitian> params,
                             std::span<const CMatrix> gens,
                             std::span<const CMatrix> squares) {
  const auto p = static_cast<Index>(params.size());
  RMatrix n = RMatrix::Zero(p, p);
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (Index r = 0; r < p; ++r) {
    const auto& x = params[static_cast<std::size_t>(r)];
    for (Index c = r; c < p; ++c) {
      const auto& y = params[static_cast<std::size_t>(c)];
      double acc = 0.0;
      for (std::size_t m = 0; m < gens.size(); ++m) {
        acc += 2.0 * trace_xqy(x, squares[m], y) -
               2.0 * trace_xayb(x, gens[m], y, gens[m]);
      }
      n(r, c) = acc;
    }
  }
  for (Index r = 0; r < p; ++r) {
    for (Index c = 0; c < r; ++c) n(r, c) = n(c, r);
  }
  return n;
}

}  // namespace

namespace serial {
std::vector<BracketCandidate> bracket_residuals(
    std::span<const HermitianOperator> basis, std::size_t prefix,
    std::span<const IndexPair> pairs) {
  return bracket_residuals_impl<false>(basis, prefix, pairs);
}
RMatrix structure_constants(std::span<const HermitianOperator> basis) {
  return structure_constants_impl<false>(basis);
}
RMatrix commutator_gram(std::span<const ElementaryHermitian> params,
                        std::span<const CMatrix> gens,
                        std::span<const CMatrix> squares) {
  return commutator_gram_impl<false>(params, gens, squares);
}
}  // namespace serial

namespace parallel {
std::vector<BracketCandidate> bracket_residuals(
    std::span<const HermitianOperator> basis, std::size_t prefix,
    std::span<const IndexPair> pairs) {
  return bracket_residuals_impl<true>(basis, prefix, pairs);
}
RMatrix structure_constants(std::span<const HermitianOperator> basis) {
  return structure_constants_impl<true>(basis);
}
RMatrix commutator_gram(std::span<const ElementaryHermitian> params,
                        std::span<const CMatrix> gens,
                        std::span<const CMatrix> squares) {
  return commutator_gram_impl<true>(params, gens, squares);
}
}  // namespace parallel

std::vector<ElementaryHermitian> block_hermitian_basis(
    std::span<const Index> starts, std::span<const Index> sizes) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<ElementaryHermitian> out;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const Index s = starts[k];
    for (Index a = s; a < s + sizes[k]; ++a) {
      ElementaryHermitian d;
      d.entries[0] = {a, a, Complex(1.0, 0.0)};
      d.count = 1;
      out.push_back(d);
      for (Index b = a + 1; b < s + sizes[k]; ++b) {
        ElementaryHermitian sym;
        sym.entries = {{{a, b, Complex(r, 0.0)}, {b, a, Complex(r, 0.0)}}};
        sym.count = 2;
        out.push_back(sym);
        ElementaryHermitian asym;
        asym.entries = {{{a, b, Complex(0.0, r)}, {b, a, Complex(0.0, -r)}}};
        asym.count = 2;
        out.push_back(asym);
      }
    }
  }
  return out;
}

CMatrix to_dense(const ElementaryHermitian& e, Index dim) {
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int s = 0; s < e.count; ++s) {
    const auto& en = e.entries[static_cast<std::size_t>(s)];
    m(en.row, en.col) += en.value;
  }
  return m;
}

}  // namespace eun::kernels
