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

#include "eun/repdecomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "eun/error.hpp"
#include "eun/kernels.hpp"
#include "eun/lie.hpp"

namespace eun {

namespace {

// Uniform double in [-1, 1) from the raw 64-bit stream; unlike the
// standard distributions this is identical across standard libraries.
double symmetric_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

double spectral_norm_hermitian(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct Clusters {
  std::vector<Index> starts;
  std::vector<Index> sizes;
  bool ambiguous = false;
};

// Groups ascending eigenvalues: gaps at most merge * range join, gaps at
// least split * range separate, anything between is ambiguous.
Clusters cluster_eigenvalues(const RVector& ev, double merge, double split) {
  Clusters c;
  const Index n = ev.size();
  const double range = n > 0 ? ev(n - 1) - ev(0) : 0.0;
  const double scale = std::max(range, 1e-300);
  c.starts.push_back(0);
  for (Index k = 1; k < n; ++k) {
    const double gap = ev(k) - ev(k - 1);
    if (gap > split * scale) {
      c.starts.push_back(k);
    } else if (gap > merge * scale) {
      c.ambiguous = true;
    }
  }
  for (std::size_t k = 0; k < c.starts.size(); ++k) {
    const Index end =
        k + 1 < c.starts.size() ? c.starts[k + 1] : static_cast<Index>(n);
    c.sizes.push_back(end - c.starts[k]);
  }
  return c;
}

// Commutant kernel expressed in the eigenbasis of a generic generator
// combination: X = U (sum_p y_p E_p) U^dag for each kernel column y.
struct CommutantSolve {
  CMatrix frame;
  std::vector<kernels::ElementaryHermitian> params;
  RMatrix kernel;

  CMatrix assemble(const RVector& y) const {
    const Index d = frame.rows();
    CMatrix local = CMatrix::Zero(d, d);
    for (std::size_t p = 0; p < params.size(); ++p) {
      const double w = y(static_cast<Index>(p));
      if (w == 0.0) continue;
      const auto& e = params[p];
      for (int s = 0; s < e.count; ++s) {
        const auto& en = e.entries[static_cast<std::size_t>(s)];
        local(en.row, en.col) += w * en.value;
      }
    }
    return frame * local * frame.adjoint();
  }
};

CommutantSolve solve_commutant(std::span<const HermitianOperator> generators,
                               double tol, std::size_t max_workspace) {
  if (generators.empty()) {
    throw Error(ErrorKind::invalid_argument, "commutant: no generators");
  }
  require_same_dim(generators, "commutant");
  const Index d = generators.front().dim();

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  CMatrix h = CMatrix::Zero(d, d);
  for (const auto& g : generators) {
    h += (1.5 + 0.5 * symmetric_unit(rng)) * g.matrix();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector& ev = es.eigenvalues();
  const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Index> starts{0};
  for (Index k = 1; k < d; ++k) {
    if (ev(k) - ev(k - 1) > 1e-8 * top) starts.push_back(k);
  }
  std::vector<Index> sizes;
  std::size_t workspace = 0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const Index end = k + 1 < starts.size() ? starts[k + 1] : d;
    sizes.push_back(end - starts[k]);
    workspace += static_cast<std::size_t>(sizes.back() * sizes.back());
  }
  if (workspace > max_workspace) {
    std::ostringstream os;
    os << "commutant: centralizer workspace of " << workspace
       << " real unknowns exceeds the limit of " << max_workspace;
    throw Error(ErrorKind::resource_limit, os.str());
  }

  CommutantSolve out;
  out.frame = es.eigenvectors();
  out.params = kernels::block_hermitian_basis(starts, sizes);
  std::vector<CMatrix> rotated;
  std::vector<CMatrix> squares;
  double scale = 0.0;
  for (const auto& g : generators) {
    rotated.push_back(out.frame.adjoint() * g.matrix() * out.frame);
    squares.push_back(rotated.back() * rotated.back());
    const double op = spectral_norm_hermitian(g.matrix());
    scale += op * op;
  }
  const RMatrix gram =
      kernels::parallel::commutator_gram(out.params, rotated, squares);
  out.kernel = psd_kernel(gram, tol, scale);
  return out;
}

std::vector<CMatrix> restrictions_of(
    std::span<const HermitianOperator> generators, const CMatrix& v) {
  std::vector<CMatrix> out;
  out.reserve(generators.size());
  for (const auto& g : generators) {
    CMatrix r = v.adjoint() * g.matrix() * v;
    out.push_back(0.5 * (r + r.adjoint()));
  }
  return out;
}

std::vector<HermitianOperator> as_operators(std::span<const CMatrix> ms) {
  std::vector<HermitianOperator> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(HermitianOperator::symmetrized(m));
  return out;
}

// Null space of X -> (X L_A - L_B X) over all restrictions, X of size
// d_B x d_A; columns are vec(X) in column-major order.
CMatrix intertwiner_space(std::span<const CMatrix> la,
                          std::span<const CMatrix> lb, double tol) {
  const Index da = la.empty() ? 0 : la.front().rows();
  const Index db = lb.empty() ? 0 : lb.front().rows();
  const Index n = da * db;
  CMatrix s = CMatrix::Zero(n, n);
  double scale = 0.0;
  const CMatrix ib = CMatrix::Identity(db, db);
  for (std::size_t m = 0; m < la.size(); ++m) {
    CMatrix op = CMatrix::Zero(n, n);
    for (Index c = 0; c < da; ++c) {
      for (Index r = 0; r < da; ++r) {
        // (L_A^T (x) I_B) block (r, c) = L_A(c, r) I_B
        op.block(r * db, c * db, db, db) += la[m](c, r) * ib;
      }
      op.block(c * db, c * db, db, db) -= lb[m];
    }
    s.noalias() += op.adjoint() * op;
    scale += la[m].squaredNorm() + lb[m].squaredNorm();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  const RVector& ev = es.eigenvalues();
  const double cut = tol * std::max(ev.size() > 0 ? ev(ev.size() - 1) : 0.0, scale);
  Index count = 0;
  while (count < ev.size() && ev(count) <= cut) ++count;
  return es.eigenvectors().leftCols(count);
}

std::uint64_t mix_seed(std::uint64_t seed) {
  // splitmix64 finalizer so nearby seeds give unrelated streams.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Multiplies v by a phase so its first entry above `eps` is real positive.
void fix_phase(CMatrix& v, double eps = 1e-10) {
  for (Index r = 0; r < v.rows(); ++r) {
    const Complex z = v(r, 0);
    if (std::abs(z) > eps) {
      v *= std::conj(z) / std::abs(z);
      return;
    }
  }
}

struct Group {
  std::vector<CMatrix> copies;
  std::vector<CMatrix> action;  // restrictions on copies[0]
};

}  // namespace

CommutantBasis commutant(std::span<const HermitianOperator> generators,
                         double tol, std::size_t max_workspace) {
  const CommutantSolve solve =
      solve_commutant(generators, tol, max_workspace);
  CommutantBasis out;
  out.dimension = generators.front().dim();
  const double unit = std::sqrt(static_cast<double>(out.dimension));
  for (Index c = 0; c < solve.kernel.cols(); ++c) {
    out.basis.push_back(HermitianOperator::symmetrized(
        unit * solve.assemble(solve.kernel.col(c))));
  }
  return out;
}

double leakage(const HermitianOperator& g, const CMatrix& subspace) {
  const CMatrix gv = g.matrix() * subspace;
  const CMatrix outside = gv - subspace * (subspace.adjoint() * gv);
  const double rms =
      g.frobenius_norm() / std::sqrt(static_cast<double>(g.dim()));
  if (rms == 0.0) return 0.0;
  return outside.norm() / rms;
}

HermitianOperator restrict_to(const HermitianOperator& g,
                              const CMatrix& subspace, double tol) {
  if (subspace.rows() != g.dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "restrict: subspace rows do not match operator dimension");
  }
  const double leak = leakage(g, subspace);
  if (leak >= tol) {
    std::ostringstream os;
    os << "restrict: subspace is not invariant (leakage " << leak << ")";
    throw Error(ErrorKind::tolerance, os.str());
  }
  return HermitianOperator::symmetrized(subspace.adjoint() * g.matrix() *
                                        subspace);
}

int intertwiner_dim(const CMatrix& sub_a, const CMatrix& sub_b,
                    std::span<const HermitianOperator> generators, double tol,
                    double subspace_tol) {
  std::vector<CMatrix> la;
  std::vector<CMatrix> lb;
  for (const auto& g : generators) {
    la.push_back(restrict_to(g, sub_a, subspace_tol).matrix());
    lb.push_back(restrict_to(g, sub_b, subspace_tol).matrix());
  }
  return static_cast<int>(intertwiner_space(la, lb, tol).cols());
}

CMatrix canonical_irrep_basis(std::span<const CMatrix> restrictions) {
  if (restrictions.empty()) return CMatrix();
  const Index d = restrictions.front().rows();
  CMatrix basis = CMatrix::Identity(d, d);
  if (d == 1) return basis;

  const std::size_t count = restrictions.size();
  std::vector<double> ranges;
  double widest = 0.0;
  for (const auto& r : restrictions) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r, Eigen::EigenvaluesOnly);
    ranges.push_back(es.eigenvalues()(d - 1) - es.eigenvalues()(0));
    widest = std::max(widest, ranges.back());
  }
  std::size_t designated = 0;
  for (std::size_t m = 0; m < count; ++m) {
    if (ranges[m] >= widest - 1e-9 * std::max(1.0, widest)) {
      designated = m;
      break;
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < count; ++k) {
    order.push_back((designated + k) % count);
  }

  // Refine degenerate groups generator by generator.
  std::vector<std::pair<Index, Index>> groups{{0, d}};
  for (std::size_t m : order) {
    std::vector<std::pair<Index, Index>> next;
    const double scale = std::max(1.0, restrictions[m].norm());
    for (auto [start, size] : groups) {
      if (size == 1) {
        next.emplace_back(start, size);
        continue;
      }
      const CMatrix cols = basis.middleCols(start, size);
      CMatrix sub = cols.adjoint() * restrictions[m] * cols;
      sub = 0.5 * (sub + sub.adjoint());
      Eigen::SelfAdjointEigenSolver<CMatrix> es(sub);
      basis.middleCols(start, size) = cols * es.eigenvectors();
      const RVector& ev = es.eigenvalues();
      Index s = 0;
      for (Index k = 1; k <= size; ++k) {
        if (k == size || ev(k) - ev(k - 1) > 1e-8 * scale) {
          next.emplace_back(start + s, k - s);
          s = k;
        }
      }
    }
    groups = std::move(next);
  }

  // Phases: the first off-diagonal link (j < k) of the following
  // restrictions becomes real positive.
  std::vector<std::size_t> phase_order(order.begin() + 1, order.end());
  phase_order.push_back(designated);
  std::vector<CMatrix> local;
  for (std::size_t m : phase_order) {
    local.push_back(basis.adjoint() * restrictions[m] * basis);
  }
  for (Index k = 1; k < d; ++k) {
    bool fixed = false;
    for (std::size_t q = 0; q < phase_order.size() && !fixed; ++q) {
      const double eps =
          1e-9 * std::max(1.0, restrictions[phase_order[q]].norm());
      for (Index j = 0; j < k; ++j) {
        const Complex z = local[q](j, k);
        if (std::abs(z) > eps) {
          const Complex rot = std::conj(z) / std::abs(z);
          basis.col(k) *= rot;
          for (auto& l : local) {
            l.col(k) *= rot;
            l.row(k) *= std::conj(rot);
          }
          fixed = true;
          break;
        }
      }
    }
  }
  return basis;
}

bool apply_gauge(IsotypicComponent& component,
                 const HermitianOperator& observable, double tol) {
  const auto n = static_cast<Index>(component.multiplicity);
  const auto d = static_cast<Index>(component.irrep_dim);
  const Index big = observable.dim();
  component.subspaces = component.discovery_subspaces;
  component.gauge_values.clear();
  component.gauge_applied = false;
  if (n == 0 || component.discovery_subspaces.front().rows() != big) {
    return false;
  }

  CMatrix w(big, n * d);
  for (Index k = 0; k < n; ++k) {
    w.middleCols(k * d, d) =
        component.discovery_subspaces[static_cast<std::size_t>(k)];
  }
  if (leakage(observable, w) >= tol) return false;
  const CMatrix y = w.adjoint() * observable.matrix() * w;
  CMatrix m(n, n);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      m(k, l) = y.block(k * d, l * d, d, d).trace() / static_cast<double>(d);
    }
  }
  CMatrix expected = CMatrix::Zero(n * d, n * d);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      expected.block(k * d, l * d, d, d) =
          m(k, l) * CMatrix::Identity(d, d);
    }
  }
  const double rms =
      observable.frobenius_norm() / std::sqrt(static_cast<double>(big));
  if (rms > 0.0 && (y - expected).norm() / rms >= tol) return false;

  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  std::vector<CMatrix> copies;
  for (Index j = n - 1; j >= 0; --j) {
    CMatrix copy = CMatrix::Zero(big, d);
    for (Index k = 0; k < n; ++k) {
      copy += es.eigenvectors()(k, j) *
              component.discovery_subspaces[static_cast<std::size_t>(k)];
    }
    fix_phase(copy);
    copies.push_back(std::move(copy));
    component.gauge_values.push_back(es.eigenvalues()(j));
  }
  component.subspaces = std::move(copies);
  component.gauge_applied = true;
  return true;
}

std::vector<std::pair<int, int>> IrrepDecomposition::signature() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& c : components) out.emplace_back(c.irrep_dim, c.multiplicity);
  return out;
}

const IsotypicComponent& IrrepDecomposition::component(int label) const {
  for (const auto& c : components) {
    if (c.label == label) return c;
  }
  throw Error(ErrorKind::invalid_argument,
              "no isotypic component with label " + std::to_string(label));
}

IrrepDecomposition decompose(std::span<const HermitianOperator> generators,
                             const DecomposeOptions& options) {
  if (generators.empty()) {
    throw Error(ErrorKind::invalid_argument, "decompose: no generators");
  }
  require_same_dim(generators, "decompose");
  const Index dim = generators.front().dim();

  const CommutantSolve solve =
      solve_commutant(generators, options.tol, options.max_workspace);
  const Index kdim = solve.kernel.cols();

  std::optional<OperatorExpression> gauge_expr = options.gauge_observable;
  if (!gauge_expr && options.default_gauge) {
    if (auto n = log2_exact(dim)) gauge_expr = total_z(*n);
  }
  std::optional<HermitianOperator> gauge_op;
  if (gauge_expr) {
    if (Index{1} << gauge_expr->n_qubits() != dim) {
      throw Error(ErrorKind::dimension_mismatch,
                  "decompose: gauge observable acts on the wrong register");
    }
    gauge_op = realize(*gauge_expr);
  }

  std::mt19937_64 rng(mix_seed(options.seed));
  const int draws = options.max_retries + 1;
  for (int attempt = 1; attempt <= draws; ++attempt) {
    RVector coeffs(kdim);
    for (Index k = 0; k < kdim; ++k) coeffs(k) = symmetric_unit(rng);
    const CMatrix x = solve.assemble(solve.kernel * coeffs);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (x + x.adjoint()));
    const Clusters clusters = cluster_eigenvalues(
        es.eigenvalues(), options.cluster_gap, 100.0 * options.cluster_gap);
    if (clusters.ambiguous) continue;

    // Candidate irreducible subspaces.
    bool ok = true;
    std::vector<Group> groups;
    for (std::size_t c = 0; c < clusters.starts.size() && ok; ++c) {
      const CMatrix v =
          es.eigenvectors().middleCols(clusters.starts[c], clusters.sizes[c]);
      for (const auto& g : generators) {
        if (leakage(g, v) >= options.subspace_tol) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      std::vector<CMatrix> action = restrictions_of(generators, v);
      if (v.cols() > 1) {
        const auto ops = as_operators(action);
        if (commutant(ops, options.tol, options.max_workspace)
                .complex_dimension() != 1) {
          ok = false;
          break;
        }
      }
      bool placed = false;
      for (auto& grp : groups) {
        if (grp.copies.front().cols() != v.cols()) continue;
        const CMatrix space = intertwiner_space(grp.action, action, options.tol);
        if (space.cols() == 0) continue;
        if (space.cols() > 1) {
          ok = false;
          break;
        }
        const Index da = v.cols();
        CMatrix t = Eigen::Map<const CMatrix>(space.data(), da, da);
        const double norm =
            std::sqrt((t.adjoint() * t).trace().real() / static_cast<double>(da));
        t /= norm;
        grp.copies.push_back(v * t);
        placed = true;
        break;
      }
      if (!ok) break;
      if (!placed) groups.push_back({{v}, std::move(action)});
    }
    if (!ok) continue;

    std::size_t dim_sum = 0;
    std::size_t square_sum = 0;
    for (const auto& grp : groups) {
      const auto d = static_cast<std::size_t>(grp.copies.front().cols());
      const auto n = grp.copies.size();
      dim_sum += d * n;
      square_sum += n * n;
    }
    if (dim_sum != static_cast<std::size_t>(dim) ||
        square_sum != static_cast<std::size_t>(kdim)) {
      continue;
    }

    IrrepDecomposition out;
    out.seed = options.seed;
    out.attempts = attempt;
    out.commutant_dimension = static_cast<std::size_t>(kdim);
    out.generators.assign(generators.begin(), generators.end());
    out.gauge_observable = gauge_expr;
    for (auto& grp : groups) {
      IsotypicComponent comp;
      comp.irrep_dim = static_cast<int>(grp.copies.front().cols());
      comp.multiplicity = static_cast<int>(grp.copies.size());
      const CMatrix c = canonical_irrep_basis(grp.action);
      for (auto& copy : grp.copies) {
        CMatrix aligned = copy * c;
        fix_phase(aligned);
        comp.discovery_subspaces.push_back(std::move(aligned));
      }
      comp.irrep_action = as_operators(
          restrictions_of(generators, comp.discovery_subspaces.front()));
      if (gauge_op) apply_gauge(comp, *gauge_op, options.subspace_tol);
      else comp.subspaces = comp.discovery_subspaces;
      out.components.push_back(std::move(comp));
    }

    auto key = [](const IsotypicComponent& c) {
      std::vector<long long> chars;
      for (const auto& a : c.irrep_action) {
        chars.push_back(std::llround(a.matrix().trace().real() /
                                     c.irrep_dim * 1e8));
      }
      return std::make_tuple(-c.irrep_dim, -c.multiplicity, chars);
    };
    std::stable_sort(out.components.begin(), out.components.end(),
                     [&](const auto& a, const auto& b) { return key(a) < key(b); });

    out.block_unitary = CMatrix(dim, dim);
    Index col = 0;
    int label = 0;
    for (auto& comp : out.components) {
      comp.label = label++;
      for (const auto& copy : comp.subspaces) {
        out.block_unitary.middleCols(col, copy.cols()) = copy;
        col += copy.cols();
      }
    }
    return out;
  }
  std::ostringstream os;
  os << "decompose: no clean eigenspace split after " << draws
     << " random commutant draws (seed " << options.seed << ")";
  throw Error(ErrorKind::retry_exhausted, os.str());
}

}  // namespace eun
