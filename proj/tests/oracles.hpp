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

// Brute-force reference computations. These deliberately avoid the
// library's algorithms (centralizer reduction, Gram-Schmidt closure,
// eigenvalue exponentials) and use plain dense linear algebra instead.

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "eun/hermitian.hpp"

namespace eun::oracle {

/// Dimension of {X : [X, G] = 0 for all G} from the eigenvalues of
/// K = sum_G (I (x) G^2 + (G^2)^T (x) I - 2 G^T (x) G) acting on vec(X).
/// Real generators use the real symmetric form.
inline int dense_commutant_dim(const std::vector<HermitianOperator>& gens) {
  const Index d = gens.front().dim();
  bool real = true;
  for (const auto& g : gens) real = real && g.matrix().imag().isZero(0.0);
  auto count = [](const auto& ev) {
    const double cut = 1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    int n = 0;
    for (Index k = 0; k < ev.size(); ++k) n += ev(k) < cut ? 1 : 0;
    return n;
  };
  if (real) {
    RMatrix k = RMatrix::Zero(d * d, d * d);
    for (const auto& h : gens) {
      const RMatrix g = h.matrix().real();
      const RMatrix g2 = g * g;
      // vec(AXB) = (B^T (x) A) vec(X), column-major.
      for (Index b = 0; b < d; ++b) {
        for (Index a = 0; a < d; ++a) {
          for (Index c = 0; c < d; ++c) {
            for (Index e = 0; e < d; ++e) {
              double v = -2.0 * g(c, a) * g(b, e);  // G^T (x) G
              if (a == c) v += g2(b, e);            // I (x) G^2
              if (b == e) v += g2(c, a);            // (G^2)^T (x) I
              k(b + a * d, e + c * d) += v;
            }
          }
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(k, Eigen::EigenvaluesOnly);
    return count(es.eigenvalues());
  }
  CMatrix k = CMatrix::Zero(d * d, d * d);
  const CMatrix id = CMatrix::Identity(d, d);
  for (const auto& h : gens) {
    const CMatrix& g = h.matrix();
    const CMatrix g2 = g * g;
    k += Eigen::kroneckerProduct(id, g2);
    k += Eigen::kroneckerProduct(g2.transpose(), id);
    k -= 2.0 * Eigen::kroneckerProduct(g.transpose(), g);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(k, Eigen::EigenvaluesOnly);
  return count(es.eigenvalues());
}

/// Real coordinates of a Hermitian matrix: its d^2 independent real entries.
inline RVector hermitian_coords(const CMatrix& m) {
  const Index d = m.rows();
  RVector v(d * d);
  Index k = 0;
  for (Index r = 0; r < d; ++r) {
    v(k++) = m(r, r).real();
    for (Index c = r + 1; c < d; ++c) {
      v(k++) = m(r, c).real();
      v(k++) = m(r, c).imag();
    }
  }
  return v;
}

inline int numeric_rank(const RMatrix& m, double rel_tol) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Index k = 0; k < s.size(); ++k) r += s(k) > rel_tol * s(0) ? 1 : 0;
  return r;
}

/// Lie closure dimension by saturation: bracket every pair of the current
/// spanning set, keep the brackets that raise the SVD rank, repeat until
/// nothing new appears.
inline int brute_force_closure_dim(const std::vector<CMatrix>& gens,
                                   double rel_tol = 1e-9) {
  std::vector<CMatrix> span;
  RMatrix coords(hermitian_coords(gens.front()).size(), 0);
  auto try_add = [&](const CMatrix& x) {
    const double nx = x.norm();
    if (nx < 1e-12) return false;
    RMatrix next(coords.rows(), coords.cols() + 1);
    next << coords, hermitian_coords(x / nx);
    if (numeric_rank(next, rel_tol) > coords.cols()) {
      coords = next;
      span.push_back(x / nx);
      return true;
    }
    return false;
  };
  for (const auto& g : gens) try_add(g);
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t size = span.size();
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        const CMatrix c = span[i] * span[j] - span[j] * span[i];
        grew = try_add(Complex(0, 1) * c) || grew;
      }
    }
  }
  return static_cast<int>(span.size());
}

/// dim {X : X A_m = B_m X} from stacked Kronecker constraints.
inline int sylvester_nullity(const std::vector<CMatrix>& as,
                             const std::vector<CMatrix>& bs) {
  const Index da = as.front().rows();
  const Index db = bs.front().rows();
  CMatrix stack(static_cast<Index>(as.size()) * da * db, da * db);
  for (std::size_t m = 0; m < as.size(); ++m) {
    // vec(X A) = (A^T (x) I) vec X, vec(B X) = (I (x) B) vec X.
    stack.middleRows(static_cast<Index>(m) * da * db, da * db) =
        Eigen::kroneckerProduct(as[m].transpose(), CMatrix::Identity(db, db)) -
        Eigen::kroneckerProduct(CMatrix::Identity(da, da), bs[m]);
  }
  Eigen::JacobiSVD<CMatrix> svd(stack);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  int zeros = static_cast<int>(da * db - s.size());
  for (Index k = 0; k < s.size(); ++k) zeros += s(k) < 1e-8 * scale ? 1 : 0;
  return zeros;
}

/// exp(i t H) by Pade scaling and squaring.
inline CMatrix expm_i(const CMatrix& h, double t) {
  const CMatrix a = Complex(0, t) * h;
  return a.exp();
}

}  // namespace eun::oracle
