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

#include <algorithm>
#include <cmath>

#include "eun/error.hpp"
#include "eun/repdecomp.hpp"
#include "oracles.hpp"

namespace eun {
namespace {

using Signature = std::vector<std::pair<int, int>>;

std::vector<HermitianOperator> exchange(int n) {
  HamiltonianSpec spec;
  spec.n_qubits = n;
  spec.couplings = all_pairs(n, 1, 1, 1);
  return build_model(spec);
}

HermitianOperator pauli(const char* text, int n) {
  return realize(parse_pauli_expression(text, n));
}

Signature sorted(Signature s) {
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<CMatrix> restrictions(const std::vector<HermitianOperator>& gens,
                                  const CMatrix& v) {
  std::vector<CMatrix> out;
  for (const auto& g : gens) out.push_back(v.adjoint() * g.matrix() * v);
  return out;
}

double off_block_mass(const IrrepDecomposition& d, const CMatrix& g) {
  CMatrix t = d.block_unitary.adjoint() * g * d.block_unitary;
  Index at = 0;
  for (const auto& c : d.components) {
    for (int k = 0; k < c.multiplicity; ++k) {
      t.block(at, at, c.irrep_dim, c.irrep_dim).setZero();
      at += c.irrep_dim;
    }
  }
  return t.norm();
}

TEST(Commutant, IrreducibleQubit) {
  const std::vector gens{pauli("X", 1), pauli("Y", 1), pauli("Z", 1)};
  EXPECT_EQ(commutant(gens).complex_dimension(), 1u);
}

TEST(Commutant, ZeroGeneratorGivesEverything) {
  const std::vector gens{HermitianOperator::zero(4)};
  EXPECT_EQ(commutant(gens).complex_dimension(), 16u);
}

TEST(Commutant, ThreeQubitExchange) {
  const auto gens = exchange(3);
  const auto c = commutant(gens);
  EXPECT_EQ(c.complex_dimension(), 20u);
  EXPECT_EQ(oracle::dense_commutant_dim(gens), 20);
  for (const auto& b : c.basis) {
    for (const auto& g : gens) {
      EXPECT_LT(commutator_norm(b.matrix(), g.matrix()), 1e-9);
    }
  }
  for (std::size_t i = 0; i < c.basis.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double ip = (c.basis[i].matrix() * c.basis[j].matrix()).trace().real() / 8.0;
      EXPECT_NEAR(ip, i == j ? 1.0 : 0.0, 1e-10);
    }
  }
}

TEST(Commutant, AgreesWithDenseOracleOnSmallModels) {
  std::vector<std::vector<HermitianOperator>> cases;
  cases.push_back(exchange(4));
  {
    HamiltonianSpec s;
    s.model = Model::xy;
    s.n_qubits = 3;
    s.couplings = all_pairs(3, 1, 1, 0);
    cases.push_back(build_model(s));
  }
  cases.push_back({pauli("XI", 2), pauli("YZ", 2)});
  cases.push_back({pauli("XXI + 0.3*ZIZ", 3)});
  for (const auto& gens : cases) {
    EXPECT_EQ(static_cast<int>(commutant(gens).complex_dimension()),
              oracle::dense_commutant_dim(gens));
  }
}

TEST(Commutant, WorkspaceGuard) {
  try {
    commutant(exchange(4), 1e-9, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_limit);
  }
}

TEST(Decompose, ThreeQubitExchange) {
  const auto gens = exchange(3);
  const auto d = decompose(gens);
  EXPECT_EQ(d.signature(), (Signature{{2, 2}, {1, 4}}));
  EXPECT_EQ(d.commutant_dimension, 20u);
  for (const auto& g : gens) EXPECT_LT(off_block_mass(d, g.matrix()), 1e-8);
  const CMatrix u = d.block_unitary;
  EXPECT_TRUE((u.adjoint() * u).isIdentity(1e-10));
}

TEST(Decompose, QubitDefiningAction) {
  const std::vector gens{pauli("X", 1), pauli("Y", 1), pauli("Z", 1)};
  EXPECT_EQ(decompose(gens).signature(), (Signature{{2, 1}}));
}

TEST(Decompose, CopiesCarryIdenticalAction) {
  const auto gens = exchange(4);
  const auto d = decompose(gens);
  for (const auto& c : d.components) {
    for (const auto& v : c.subspaces) {
      const auto r = restrictions(gens, v);
      for (std::size_t m = 0; m < gens.size(); ++m) {
        EXPECT_LT((r[m] - c.irrep_action[m].matrix()).norm(), 1e-9);
      }
    }
  }
}

TEST(Decompose, DimensionAccountingAndDuality) {
  for (int n = 2; n <= 5; ++n) {
    const auto gens = exchange(n);
    const auto d = decompose(gens);
    int total = 0;
    std::size_t n_sq = 0;
    for (const auto& c : d.components) {
      total += c.irrep_dim * c.multiplicity;
      n_sq += static_cast<std::size_t>(c.multiplicity * c.multiplicity);
    }
    EXPECT_EQ(total, 1 << n);
    EXPECT_EQ(n_sq, d.commutant_dimension);
  }
}

TEST(Decompose, SeedIndependence) {
  const auto gens = exchange(5);
  DecomposeOptions a;
  DecomposeOptions b;
  b.seed = 12345;
  EXPECT_EQ(sorted(decompose(gens, a).signature()),
            sorted(decompose(gens, b).signature()));
}

TEST(Decompose, RetryBudgetIsReported) {
  // A cluster gap so wide that every draw is ambiguous.
  DecomposeOptions o;
  o.cluster_gap = 0.9;
  o.max_retries = 2;
  try {
    decompose(exchange(3), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::retry_exhausted);
  }
}

TEST(Intertwiner, SelfAndCopies) {
  const auto gens = exchange(3);
  const auto d = decompose(gens);
  const auto& c = d.components.front();
  ASSERT_EQ(c.irrep_dim, 2);
  EXPECT_EQ(intertwiner_dim(c.subspaces[0], c.subspaces[0], gens), 1);
  EXPECT_EQ(intertwiner_dim(c.subspaces[0], c.subspaces[1], gens), 1);
  EXPECT_EQ(oracle::sylvester_nullity(restrictions(gens, c.subspaces[0]),
                                      restrictions(gens, c.discovery_subspaces[1])),
            1);
}

TEST(Intertwiner, RejectsNonInvariantSubspace) {
  const auto gens = exchange(3);
  CMatrix v = CMatrix::Zero(8, 1);
  v(1, 0) = 1.0;
  EXPECT_THROW(intertwiner_dim(v, v, gens), Error);
}

TEST(Restrict, Examples) {
  const auto gens = exchange(3);
  const auto d = decompose(gens);
  const auto& code = d.components.front().subspaces[0];
  const auto id = restrict_to(HermitianOperator::identity(8), code);
  EXPECT_TRUE(id.matrix().isIdentity(1e-12));
  const auto e12 = restrict_to(gens[0], code).matrix();
  CMatrix expected = CMatrix::Zero(2, 2);
  expected.diagonal() << -3, 1;
  EXPECT_LT((e12 - expected).norm(), 1e-9);
  const auto h0 = restrict_to(gens[0] + gens[1] + gens[2], code).matrix();
  EXPECT_LT((h0 + 3.0 * CMatrix::Identity(2, 2)).norm(), 1e-9);
  // |010> mixes with |100> under E12.
  CMatrix leaky = CMatrix::Zero(8, 1);
  leaky(0b010, 0) = 1.0;
  EXPECT_THROW(restrict_to(gens[0], leaky), Error);
}

TEST(CanonicalBasis, AscendingWithPositivePhase) {
  CMatrix a(2, 2);
  a << 1, 0, 0, -1;
  CMatrix b(2, 2);
  b << 0, Complex(0, -1), Complex(0, 1), 0;
  const std::vector rs{a, b};
  const CMatrix u = canonical_irrep_basis(rs);
  const CMatrix ra = u.adjoint() * a * u;
  const CMatrix rb = u.adjoint() * b * u;
  EXPECT_NEAR(ra(0, 0).real(), -1.0, 1e-12);
  EXPECT_NEAR(ra(1, 1).real(), 1.0, 1e-12);
  EXPECT_NEAR(rb(0, 1).imag(), 0.0, 1e-12);
  EXPECT_GT(rb(0, 1).real(), 0.0);
}

TEST(Gauge, OrdersCopiesByTotalZ) {
  const auto d = decompose(exchange(3));
  for (const auto& c : d.components) {
    ASSERT_TRUE(c.gauge_applied);
    EXPECT_TRUE(std::is_sorted(c.gauge_values.rbegin(), c.gauge_values.rend()));
  }
  EXPECT_NEAR(d.components[0].gauge_values[0], 1.0, 1e-9);
  EXPECT_NEAR(d.components[0].gauge_values[1], -1.0, 1e-9);
}

TEST(Gauge, NonCommutingObservableKeepsDiscoveryOrder) {
  auto d = decompose(exchange(3));
  auto c = d.components[0];
  EXPECT_FALSE(apply_gauge(c, pauli("XII", 3)));
  EXPECT_FALSE(c.gauge_applied);
  for (std::size_t k = 0; k < c.subspaces.size(); ++k) {
    EXPECT_EQ(c.subspaces[k], c.discovery_subspaces[k]);
  }
}

TEST(SixQubits, DenseOracleCommutant) {
  EXPECT_EQ(oracle::dense_commutant_dim(exchange(6)), 84);
}

TEST(SixQubits, FiveDimComponentsInequivalent) {
  const auto gens = exchange(6);
  const auto d = decompose(gens);
  EXPECT_EQ(d.signature(), (Signature{{9, 3}, {5, 5}, {5, 1}, {1, 7}}));
  EXPECT_EQ(d.commutant_dimension, 84u);
  const auto& a = d.components[1].subspaces[0];
  const auto& b = d.components[2].subspaces[0];
  EXPECT_EQ(intertwiner_dim(a, b, gens), 0);
  EXPECT_EQ(oracle::sylvester_nullity(restrictions(gens, a), restrictions(gens, b)), 0);
  for (const auto& g : gens) EXPECT_LT(off_block_mass(d, g.matrix()), 1e-8);
}

}  // namespace
}  // namespace eun
