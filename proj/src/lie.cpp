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

#include "eun/lie.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "eun/error.hpp"
#include "eun/kernels.hpp"

namespace eun {

namespace {

constexpr std::size_t kBatchSize = 256;

double hs_norm(const CMatrix& m) {
  return std::sqrt(std::max(0.0, kernels::hs_dot(m, m)));
}

// Projects `x` off `basis` in index order, twice.
void project_out(std::span<const HermitianOperator> basis, std::size_t from,
                 CMatrix& x) {
  for (std::size_t k = from; k < basis.size(); ++k) {
    const CMatrix& b = basis[k].matrix();
    x -= kernels::hs_dot(b, x) * b;
  }
}

}  // namespace

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "hs_inner");
  const Complex tr = (a.matrix().cwiseProduct(b.matrix().transpose())).sum() /
                     static_cast<double>(a.dim());
  if (std::abs(tr.imag()) >= 1e-12) {
    throw Error(ErrorKind::not_hermitian,
                "hs_inner: trace has imaginary residue " +
                    std::to_string(tr.imag()));
  }
  return tr.real();
}

LieAlgebraBasis lie_closure(std::span<const HermitianOperator> generators,
                            double tol, std::optional<std::size_t> max_dim) {
  if (generators.empty()) {
    throw Error(ErrorKind::invalid_argument, "lie_closure: no generators");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::invalid_argument,
                "lie_closure: tolerance must be positive");
  }
  require_same_dim(generators, "lie_closure");

  LieAlgebraBasis out;
  out.operator_dim = generators.front().dim();
  out.n_qubits = log2_exact(out.operator_dim).value_or(0);
  out.closure_tolerance = tol;
  out.generator_count = generators.size();
  const auto d = static_cast<std::size_t>(out.operator_dim);
  const std::size_t limit = max_dim.value_or(d * d);

  auto& basis = out.basis;
  auto admit = [&](CMatrix x, double reference_norm) {
    project_out(basis, 0, x);
    const double norm = hs_norm(x);
    if (!(norm > tol * reference_norm)) return false;
    if (basis.size() >= limit) {
      std::ostringstream os;
      os << "lie_closure: algebra dimension exceeds max_dim = " << limit;
      throw Error(ErrorKind::resource_limit, os.str());
    }
    basis.push_back(HermitianOperator(x / norm));
    return true;
  };

  for (const auto& g : generators) {
    if (!std::isfinite(g.frobenius_norm())) {
      throw Error(ErrorKind::not_hermitian, "lie_closure: non-finite input");
    }
    const double norm = hs_norm(g.matrix());
    if (norm == 0.0) continue;
    // Re-check hermiticity; inputs built with symmetrized() skip validation.
    HermitianOperator(g.matrix());
    CMatrix x = g.matrix();
    project_out(basis, 0, x);
    admit(std::move(x), norm);
  }

  std::deque<kernels::IndexPair> queue;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) queue.emplace_back(i, j);
  }
  std::vector<kernels::IndexPair> batch;
  while (!queue.empty()) {
    batch.clear();
    while (!queue.empty() && batch.size() < kBatchSize) {
      batch.push_back(queue.front());
      queue.pop_front();
    }
    const std::size_t prefix = basis.size();
    auto candidates =
        kernels::parallel::bracket_residuals(basis, prefix, batch);
    for (auto& cand : candidates) {
      if (cand.input_norm == 0.0) continue;
      CMatrix& x = cand.residual;
      project_out(basis, prefix, x);
      // Basis elements have unit norm, so brackets are O(1); a bracket that
      // nearly cancels must not promote its rounding noise to a direction.
      const double reference = std::max(cand.input_norm, 1.0);
      // Components already absent after the first pass stay absent.
      if (!(hs_norm(x) > tol * reference)) continue;
      if (admit(std::move(x), reference)) {
        const std::size_t fresh = basis.size() - 1;
        for (std::size_t i = 0; i < fresh; ++i) queue.emplace_back(i, fresh);
      }
    }
  }
  out.closed = true;
  return out;
}

Membership contains(const LieAlgebraBasis& algebra,
                    const HermitianOperator& candidate, double tol) {
  if (algebra.operator_dim != candidate.dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "contains: candidate dimension does not match the algebra");
  }
  const double norm = hs_norm(candidate.matrix());
  if (norm == 0.0) return {true, 0.0};
  CMatrix x = candidate.matrix();
  project_out(algebra.basis, 0, x);
  project_out(algebra.basis, 0, x);
  const double residual = hs_norm(x) / norm;
  return {residual < tol, residual};
}

RVector coordinates(std::span<const HermitianOperator> basis,
                    const HermitianOperator& op) {
  RVector c(static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    c(static_cast<Index>(k)) = kernels::hs_dot(basis[k].matrix(), op.matrix());
  }
  return c;
}

RMatrix psd_kernel(const RMatrix& gram, double rel_tol, double floor) {
  if (gram.rows() == 0) return RMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(gram);
  const RVector& ev = es.eigenvalues();
  const double scale = std::max(ev(ev.size() - 1), floor);
  const double cut = rel_tol * scale;
  Index count = 0;
  while (count < ev.size() && ev(count) <= cut) ++count;
  return es.eigenvectors().leftCols(count);
}

std::vector<HermitianOperator> center_of(const LieAlgebraBasis& algebra,
                                         double tol) {
  const auto dim = static_cast<Index>(algebra.size());
  if (dim == 0) return {};
  const RMatrix f = kernels::parallel::structure_constants(algebra.basis);
  // Row block j of the constraint matrix maps coefficients c_k to the
  // coordinates of [sum_k c_k b_k, b_j].
  RMatrix gram = RMatrix::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    RMatrix block(dim, dim);
    for (Index k = 0; k < dim; ++k) block.col(k) = f.col(k * dim + j);
    gram.noalias() += block.transpose() * block;
  }
  // The bracket of unit-norm elements is O(1); floor the scale at 1 so a
  // fully abelian algebra yields the whole basis.
  // Eigenvalues are squared bracket norms; rounding puts the exact zeros
  // near 1e-15, so the squared tolerance is floored.
  const RMatrix kernel = psd_kernel(gram, std::max(tol * tol, 1e-13), 1.0);
  std::vector<HermitianOperator> out;
  for (Index c = 0; c < kernel.cols(); ++c) {
    CMatrix x = CMatrix::Zero(algebra.operator_dim, algebra.operator_dim);
    for (Index k = 0; k < dim; ++k) {
      x += kernel(k, c) * algebra.basis[static_cast<std::size_t>(k)].matrix();
    }
    out.push_back(HermitianOperator::symmetrized(x));
  }
  return out;
}

double bracket_closure_defect(const LieAlgebraBasis& algebra) {
  double worst = 0.0;
  const auto& b = algebra.basis;
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      CMatrix x = lie_bracket(b[i], b[j]).matrix();
      const double norm = hs_norm(x);
      if (norm == 0.0) continue;
      project_out(b, 0, x);
      project_out(b, 0, x);
      worst = std::max(worst, hs_norm(x) / norm);
    }
  }
  return worst;
}

}  // namespace eun
