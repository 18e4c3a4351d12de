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

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "eun/hermitian.hpp"

namespace eun {

inline constexpr double kUnitarityTolerance = 1e-10;

/// Dense unitary; construction checks |(U^dag U - I)_ij| <= 1e-10.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix m, double tolerance = kUnitarityTolerance);

  static UnitaryMatrix identity(Index dim);

  const CMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  UnitaryMatrix operator*(const UnitaryMatrix& o) const;
  UnitaryMatrix pow(int n) const;
  UnitaryMatrix adjoint() const;

 private:
  struct Trusted {};
  UnitaryMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}
  CMatrix m_;
};

/// exp(i t H) through the eigendecomposition of H.
UnitaryMatrix matrix_exp(const HermitianOperator& h, double t);

/// (exp(i alpha A / n) exp(i beta B / n))^n.
UnitaryMatrix trotter_sum(const HermitianOperator& a,
                          const HermitianOperator& b, double alpha,
                          double beta, int n);

/// (exp(-iA/sqrt n) exp(iB/sqrt n) exp(iA/sqrt n) exp(-iB/sqrt n))^n,
/// which tends to exp([A, B]).
UnitaryMatrix group_commutator(const HermitianOperator& a,
                               const HermitianOperator& b, int n);

/// exp([A, B]) computed exactly: [A, B] = iK with K = -i[A, B] Hermitian.
UnitaryMatrix commutator_exp(const HermitianOperator& a,
                             const HermitianOperator& b);

/// min over phi of the spectral norm of U - e^{i phi} V, from the
/// eigenphases of V^dag U.
double unitary_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);

enum class FormulaKind { trotter, commutator };

std::string_view to_string(FormulaKind k);
FormulaKind parse_formula_kind(std::string_view name);

/// Errors at or below this are treated as exact.
inline constexpr double kExactErrorThreshold = 1e-13;

struct ScalingReport {
  FormulaKind kind = FormulaKind::trotter;
  std::vector<std::pair<int, double>> samples;  // (n, error)
  bool exact = false;          // every error vanished; no fit
  std::size_t exact_points = 0;  // samples excluded as exact zeros
  bool transients_dropped = false;
  double slope = 0.0;
  double slope_stderr = 0.0;
  std::size_t fitted_points = 0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double max_relative_residual = 0.0;  // max |exp(residual) - 1|
};

/// Least squares of y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Distance to the exact target for each n, then a log-log fit. When the
/// fit misses some point by more than 10% the two smallest n are dropped
/// and the fit repeated.
ScalingReport scaling_study(FormulaKind kind, const HermitianOperator& a,
                            const HermitianOperator& b, double alpha,
                            double beta, std::span<const int> n_list);

}  // namespace eun
