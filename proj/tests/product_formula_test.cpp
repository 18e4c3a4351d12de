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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eun/error.hpp"
#include "eun/pauli.hpp"
#include "eun/product_formula.hpp"
#include "oracles.hpp"

namespace eun {
namespace {

HermitianOperator pauli(const char* text, int n) {
  return realize(parse_pauli_expression(text, n));
}

std::vector<int> doubling(int from, int to) {
  std::vector<int> out;
  for (int n = from; n <= to; n *= 2) out.push_back(n);
  return out;
}

TEST(MatrixExp, Examples) {
  const auto z = pauli("Z", 1);
  EXPECT_TRUE(matrix_exp(z, 0.0).matrix().isIdentity(1e-15));
  const CMatrix u = matrix_exp(z, std::numbers::pi / 2).matrix();
  EXPECT_LT(std::abs(u(0, 0) - Complex(0, 1)), 1e-15);
  EXPECT_LT(std::abs(u(1, 1) - Complex(0, -1)), 1e-15);
  const auto e = build_exchange(1, 2, 2);
  const double t = 0.37;
  Eigen::ComplexEigenSolver<CMatrix> es(matrix_exp(e, t).matrix());
  int triplet = 0;
  int singlet = 0;
  for (Index k = 0; k < 4; ++k) {
    triplet += std::abs(es.eigenvalues()(k) - std::exp(Complex(0, t))) < 1e-12;
    singlet += std::abs(es.eigenvalues()(k) - std::exp(Complex(0, -3 * t))) < 1e-12;
  }
  EXPECT_EQ(triplet, 3);
  EXPECT_EQ(singlet, 1);
}

TEST(MatrixExp, AgreesWithPadeOracle) {
  const auto h = pauli("0.3*XYZ - 1.1*ZZI + 0.7*IXX + 0.2*YII", 3);
  for (double t : {0.1, 1.0, 4.5}) {
    EXPECT_LT((matrix_exp(h, t).matrix() - oracle::expm_i(h.matrix(), t)).norm(), 1e-12);
  }
}

TEST(Unitary, Validation) {
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  EXPECT_THROW(UnitaryMatrix{bad}, Error);
  const auto u = matrix_exp(pauli("X", 1), 0.3);
  EXPECT_LT(unitary_distance(u.pow(5), matrix_exp(pauli("X", 1), 1.5)), 1e-14);
  EXPECT_TRUE((u * u.adjoint()).matrix().isIdentity(1e-14));
}

TEST(Trotter, CommutingIsExact) {
  const auto a = pauli("ZI", 2);
  const auto b = pauli("IZ", 2);
  const auto target = matrix_exp(a + b, 1.0);
  for (int n : {1, 2, 7, 64}) {
    EXPECT_LT(unitary_distance(trotter_sum(a, b, 1.0, 1.0, n), target), 1e-13);
  }
}

TEST(Trotter, ErrorDecreasesAgainstOracle) {
  const auto a = pauli("X", 1);
  const auto b = pauli("Z", 1);
  const UnitaryMatrix target(oracle::expm_i((a + b).matrix(), 1.0));
  double prev = 1e9;
  for (int n : doubling(8, 1024)) {
    const double err = unitary_distance(trotter_sum(a, b, 1.0, 1.0, n), target);
    EXPECT_LT(err, prev);
    prev = err;
  }
}

TEST(Trotter, SymmetryTriangleBound) {
  const auto a = pauli("X", 1);
  const auto b = pauli("Z", 1);
  const auto target = matrix_exp(a + b, 1.0);
  for (int n : {4, 32}) {
    const auto ab = trotter_sum(a, b, 1.0, 1.0, n);
    const auto ba = trotter_sum(b, a, 1.0, 1.0, n);
    EXPECT_LE(unitary_distance(ab, ba),
              unitary_distance(ab, target) + unitary_distance(ba, target) + 1e-14);
  }
}

TEST(GroupCommutator, CommutingIsIdentity) {
  const auto a = pauli("ZI", 2);
  const auto b = pauli("IZ", 2);
  EXPECT_TRUE(commutator_exp(a, b).matrix().isIdentity(1e-14));
  for (int n : {1, 9, 100}) {
    EXPECT_LT(unitary_distance(group_commutator(a, b, n), UnitaryMatrix::identity(4)),
              1e-13);
  }
}

TEST(GroupCommutator, TargetIsExpTwoIZ) {
  const auto x = pauli("X", 1);
  const auto y = pauli("Y", 1);
  const CMatrix direct = (x.matrix() * y.matrix() - y.matrix() * x.matrix()).exp();
  EXPECT_LT((commutator_exp(x, y).matrix() - direct).norm(), 1e-13);
  EXPECT_LT((commutator_exp(x, y).matrix() - oracle::expm_i(pauli("Z", 1).matrix(), 2.0))
                .norm(), 1e-13);
  double prev = 1e9;
  for (int n : doubling(16, 4096)) {
    const double err = unitary_distance(group_commutator(x, y, n), commutator_exp(x, y));
    EXPECT_LT(err, prev);
    prev = err;
  }
}

TEST(Distance, PhaseInvariant) {
  const auto u = matrix_exp(pauli("0.4*XY + YZ", 2), 0.9);
  EXPECT_LT(unitary_distance(u, u), 1e-15);
  const UnitaryMatrix phased(std::exp(Complex(0, 1.234)) * u.matrix());
  EXPECT_LT(unitary_distance(u, phased), 1e-14);
  const UnitaryMatrix x(pauli("X", 1).matrix());
  const auto id = UnitaryMatrix::identity(2);
  const double d = unitary_distance(x, id);
  EXPECT_GT(d, 0.1);
  const UnitaryMatrix xr(std::exp(Complex(0, 0.5)) * x.matrix());
  const UnitaryMatrix ir(std::exp(Complex(0, -2.0)) * id.matrix());
  EXPECT_NEAR(unitary_distance(xr, ir), d, 1e-14);
}

TEST(Scaling, TrotterSlope) {
  const auto r = scaling_study(FormulaKind::trotter, pauli("X", 1), pauli("Z", 1),
                               1.0, 1.0, doubling(8, 1024));
  ASSERT_FALSE(r.exact);
  EXPECT_NEAR(r.slope, -1.0, 0.1);
  for (std::size_t k = 2; k < r.samples.size(); ++k) {
    EXPECT_LT(r.samples[k].second, r.samples[k - 2].second);
  }
}

TEST(Scaling, CommutatorSlope) {
  const auto r = scaling_study(FormulaKind::commutator, pauli("X", 1), pauli("Y", 1),
                               1.0, 1.0, doubling(16, 4096));
  ASSERT_FALSE(r.exact);
  EXPECT_NEAR(r.slope, -0.5, 0.15);
}

TEST(Scaling, ZeroOperatorIsExact) {
  const auto r = scaling_study(FormulaKind::trotter, pauli("X", 1),
                               HermitianOperator::zero(2), 1.0, 1.0, doubling(8, 64));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.exact_points, r.samples.size());
}

TEST(Scaling, InputValidation) {
  const std::vector<int> few{1, 2, 3};
  EXPECT_THROW(scaling_study(FormulaKind::trotter, pauli("X", 1), pauli("Z", 1), 1, 1, few),
               Error);
  const std::vector<int> unsorted{4, 2, 8, 16};
  EXPECT_THROW(
      scaling_study(FormulaKind::trotter, pauli("X", 1), pauli("Z", 1), 1, 1, unsorted),
      Error);
}

TEST(FitLine, ExactLine) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, -1, -3, -5};
  const auto f = fit_line(x, y);
  EXPECT_NEAR(f.slope, -2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.slope_stderr, 0.0, 1e-12);
}

}  // namespace
}  // namespace eun
