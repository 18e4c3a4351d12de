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

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace eun {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Per-entry absolute tolerance for the hermiticity invariant.
inline constexpr double kHermiticityTolerance = 1e-12;

/// Dense Hermitian matrix. Construction validates squareness and
/// |A_ij - conj(A_ji)| <= tolerance for every entry.
///
/// Register operators have dimension 2^n; restrictions to invariant
/// subspaces may have any dimension, so the power-of-two property is
/// reported by n_qubits() rather than enforced.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(CMatrix m,
                             double tolerance = kHermiticityTolerance);

  /// Builds (m + m^dag)/2 without validation.
  static HermitianOperator symmetrized(const CMatrix& m);
  static HermitianOperator zero(Index dim);
  static HermitianOperator identity(Index dim);

  const CMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  std::optional<int> n_qubits() const;

  double frobenius_norm() const { return m_.norm(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  friend HermitianOperator operator*(double s, const HermitianOperator& h) {
    return h * s;
  }

 private:
  struct Trusted {};
  HermitianOperator(CMatrix m, Trusted) : m_(std::move(m)) {}

  CMatrix m_;

  friend HermitianOperator lie_bracket(const HermitianOperator&,
                                       const HermitianOperator&);
};

/// i[A, B], Hermitian whenever A and B are.
HermitianOperator lie_bracket(const HermitianOperator& a,
                              const HermitianOperator& b);

/// Frobenius norm of [A, B].
double commutator_norm(const CMatrix& a, const CMatrix& b);

/// Maximum |A_ij - conj(A_ji)|.
double hermiticity_defect(const CMatrix& m);

/// Returns log2(dim) when dim is a power of two.
std::optional<int> log2_exact(Index dim);

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b,
                      const char* where);
void require_same_dim(std::span<const HermitianOperator> ops,
                      const char* where);

}  // namespace eun
