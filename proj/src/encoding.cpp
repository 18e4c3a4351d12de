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

#include "eun/encoding.hpp"

#include <cmath>
#include <sstream>

#include "eun/error.hpp"
#include "eun/kernels.hpp"

namespace eun {

EncodedGeneratorSet build_su2_generators(int block_offset, int n_qubits) {
  if (block_offset < 1 || block_offset + 2 > n_qubits) {
    std::ostringstream os;
    os << "build_su2_generators: block at qubit " << block_offset
       << " does not fit in " << n_qubits << " qubits";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  const int a = block_offset;
  const int b = block_offset + 1;
  const int c = block_offset + 2;
  const auto e_ab = build_exchange(a, b, n_qubits);
  const auto e_bc = build_exchange(b, c, n_qubits);
  const auto e_ac = build_exchange(a, c, n_qubits);

  EncodedGeneratorSet out;
  out.offset = block_offset;
  out.n_qubits = n_qubits;
  out.h0 = e_ab + e_bc + e_ac;
  out.h1 = (e_ac - e_bc) * (1.0 / (4.0 * std::sqrt(3.0)));
  out.h3 = (e_bc + e_ac - e_ab * 2.0) * (1.0 / 12.0);
  out.h2 = lie_bracket(out.h1, out.h3);
  return out;
}

Code extract_code(const IrrepDecomposition& decomp, int component_label,
                  int gauge_index,
                  const std::optional<OperatorExpression>& gauge_observable) {
  const IsotypicComponent& source = decomp.component(component_label);
  if (gauge_index < 0 || gauge_index >= source.multiplicity) {
    std::ostringstream os;
    os << "extract_code: gauge index " << gauge_index << " outside [0, "
       << source.multiplicity << ")";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  Code code;
  code.n_qubits = log2_exact(decomp.block_unitary.rows()).value_or(0);
  code.logical_dim = source.irrep_dim;
  code.component_label = component_label;
  code.gauge_index = gauge_index;

  const bool same_gauge =
      !gauge_observable || (decomp.gauge_observable &&
                            *gauge_observable == *decomp.gauge_observable);
  if (same_gauge) {
    code.gauge_observable = decomp.gauge_observable;
    code.gauge_applied = source.gauge_applied;
    code.logical_basis =
        source.subspaces[static_cast<std::size_t>(gauge_index)];
    return code;
  }
  IsotypicComponent regauged = source;
  if (Index{1} << gauge_observable->n_qubits() != decomp.block_unitary.rows()) {
    throw Error(ErrorKind::dimension_mismatch,
                "extract_code: gauge observable acts on the wrong register");
  }
  code.gauge_applied = apply_gauge(regauged, realize(*gauge_observable));
  code.gauge_observable = gauge_observable;
  code.logical_basis =
      regauged.subspaces[static_cast<std::size_t>(gauge_index)];
  return code;
}

HermitianOperator encoded_action(const Code& code, const HermitianOperator& h,
                                 double tol) {
  return restrict_to(h, code.logical_basis, tol);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::full: return "full";
    case Verdict::abelian_trivial: return "abelian/trivial";
    case Verdict::partial: return "partial";
  }
  return "unknown";
}

UniversalityVerdict classify_restricted(std::span<const HermitianOperator> ops,
                                        double tol) {
  UniversalityVerdict v;
  if (ops.empty()) return v;
  const Index d = ops.front().dim();
  v.logical_dim = static_cast<int>(d);
  v.required = static_cast<std::size_t>(d * d - 1);
  if (d == 1) return v;

  std::vector<HermitianOperator> traceless;
  double scale = 0.0;
  for (const auto& op : ops) scale = std::max(scale, op.frobenius_norm());
  for (const auto& op : ops) {
    const Complex tr = op.matrix().trace() / static_cast<double>(d);
    CMatrix m = op.matrix() - tr.real() * CMatrix::Identity(d, d);
    if (m.norm() > tol * std::max(scale, 1e-300)) {
      traceless.push_back(HermitianOperator::symmetrized(m));
    }
  }
  if (traceless.empty()) return v;

  const LieAlgebraBasis algebra = lie_closure(traceless, tol);
  v.achieved_algebra_dim = algebra.size();
  v.residuals["closure_defect"] = bracket_closure_defect(algebra);
  const auto comm = commutant(algebra.basis);
  v.residuals["restricted_commutant_dim"] =
      static_cast<double>(comm.complex_dimension());
  v.irreducible = comm.complex_dimension() == 1;

  double widest_bracket = 0.0;
  for (std::size_t j = 0; j < algebra.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      widest_bracket = std::max(
          widest_bracket,
          commutator_norm(algebra.basis[i].matrix(), algebra.basis[j].matrix()));
    }
  }
  v.residuals["max_bracket_norm"] = widest_bracket;
  if (widest_bracket <= tol * std::sqrt(static_cast<double>(d))) {
    v.verdict = Verdict::abelian_trivial;
  } else if (v.achieved_algebra_dim >= v.required && v.irreducible) {
    v.verdict = Verdict::full;
  } else {
    v.verdict = Verdict::partial;
  }
  return v;
}

UniversalityVerdict verify_irrep_universality(
    const IrrepDecomposition& decomp, int component_label,
    std::span<const HermitianOperator> generators, double tol) {
  const IsotypicComponent& comp = decomp.component(component_label);
  std::vector<HermitianOperator> restricted;
  for (const auto& g : generators) {
    restricted.push_back(restrict_to(g, comp.subspaces.front()));
  }
  if (restricted.empty()) {
    UniversalityVerdict v;
    v.logical_dim = comp.irrep_dim;
    v.required = static_cast<std::size_t>(comp.irrep_dim * comp.irrep_dim - 1);
    return v;
  }
  return classify_restricted(restricted, tol);
}

double efficiency(int logical_dim, int n_qubits) {
  if (logical_dim < 1 || n_qubits < 1) {
    throw Error(ErrorKind::invalid_argument,
                "efficiency: dimension and register size must be positive");
  }
  return std::log2(static_cast<double>(logical_dim)) /
         static_cast<double>(n_qubits);
}

double efficiency_bound(int n_qubits) {
  if (n_qubits < 2) {
    throw Error(ErrorKind::invalid_argument,
                "efficiency_bound: needs at least two qubits");
  }
  const double n = n_qubits;
  return 1.0 - 1.5 * std::log2(n) / n;
}

Code conjoin(const Code& a, const Code& b) {
  const Index da = a.logical_basis.rows();
  const Index db = b.logical_basis.rows();
  Code out;
  out.n_qubits = a.n_qubits + b.n_qubits;
  out.logical_dim = a.logical_dim * b.logical_dim;
  out.logical_basis = CMatrix(da * db, out.logical_dim);
  Index col = 0;
  for (Index i = 0; i < a.logical_basis.cols(); ++i) {
    for (Index j = 0; j < b.logical_basis.cols(); ++j) {
      for (Index ra = 0; ra < da; ++ra) {
        out.logical_basis.col(col).segment(ra * db, db) =
            a.logical_basis(ra, i) * b.logical_basis.col(j);
      }
      ++col;
    }
  }
  return out;
}

std::vector<HermitianOperator> leakage_preserving_subalgebra(
    const LieAlgebraBasis& algebra, const Code& code, double tol) {
  const CMatrix& v = code.logical_basis;
  if (v.rows() != algebra.operator_dim) {
    throw Error(ErrorKind::dimension_mismatch,
                "leakage_preserving_subalgebra: code and algebra registers "
                "differ");
  }
  const auto k = static_cast<Index>(algebra.size());
  std::vector<CMatrix> leaks;
  leaks.reserve(algebra.size());
  for (const auto& b : algebra.basis) {
    const CMatrix bv = b.matrix() * v;
    leaks.push_back(bv - v * (v.adjoint() * bv));
  }
  RMatrix gram(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = i; j < k; ++j) {
      const double g = kernels::real_dot(leaks[static_cast<std::size_t>(i)],
                                         leaks[static_cast<std::size_t>(j)]);
      gram(i, j) = g;
      gram(j, i) = g;
    }
  }
  const RMatrix kernel = psd_kernel(gram, tol, 1.0);
  std::vector<HermitianOperator> out;
  for (Index c = 0; c < kernel.cols(); ++c) {
    CMatrix x = CMatrix::Zero(algebra.operator_dim, algebra.operator_dim);
    for (Index i = 0; i < k; ++i) {
      x += kernel(i, c) * algebra.basis[static_cast<std::size_t>(i)].matrix();
    }
    out.push_back(HermitianOperator::symmetrized(x));
  }
  return out;
}

UniversalityVerdict check_encoded_universality(
    std::span<const HermitianOperator> generators, const Code& code,
    double tol) {
  UniversalityVerdict v;
  v.logical_dim = code.logical_dim;
  v.required =
      static_cast<std::size_t>(code.logical_dim * code.logical_dim - 1);
  const LieAlgebraBasis algebra = lie_closure(generators, tol);
  if (algebra.size() == 0) return v;
  const auto preserving = leakage_preserving_subalgebra(algebra, code, tol);
  std::vector<HermitianOperator> restricted;
  double worst_leak = 0.0;
  for (const auto& a : preserving) {
    worst_leak = std::max(worst_leak, leakage(a, code.logical_basis));
    restricted.push_back(HermitianOperator::symmetrized(
        code.logical_basis.adjoint() * a.matrix() * code.logical_basis));
  }
  if (restricted.empty()) return v;
  v = classify_restricted(restricted, tol);
  v.residuals["algebra_dim"] = static_cast<double>(algebra.size());
  v.residuals["preserving_dim"] = static_cast<double>(preserving.size());
  v.residuals["max_code_leakage"] = worst_leak;
  return v;
}

double projection_weight(const Code& code, const IrrepDecomposition& decomp,
                         std::span<const int> component_labels) {
  double total = 0.0;
  for (int label : component_labels) {
    for (const auto& copy : decomp.component(label).subspaces) {
      total += (copy.adjoint() * code.logical_basis).squaredNorm();
    }
  }
  return total / static_cast<double>(code.logical_dim);
}

}  // namespace eun
