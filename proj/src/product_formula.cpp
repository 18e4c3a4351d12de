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

#include "eun/product_formula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "eun/error.hpp"

namespace eun {

UnitaryMatrix::UnitaryMatrix(CMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw Error(ErrorKind::invalid_argument,
                "UnitaryMatrix: matrix must be square and non-empty");
  }
  const CMatrix defect =
      m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
  const double worst = defect.cwiseAbs().maxCoeff();
  if (!(worst <= tolerance)) {
    std::ostringstream os;
    os << "UnitaryMatrix: unitarity defect " << worst;
    throw Error(ErrorKind::tolerance, os.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
  return UnitaryMatrix(CMatrix::Identity(dim, dim), Trusted{});
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& o) const {
  if (dim() != o.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "UnitaryMatrix: product");
  }
  return UnitaryMatrix(m_ * o.m_);
}

UnitaryMatrix UnitaryMatrix::pow(int n) const {
  if (n < 0) {
    throw Error(ErrorKind::invalid_argument, "UnitaryMatrix::pow: n < 0");
  }
  CMatrix result = CMatrix::Identity(dim(), dim());
  CMatrix base = m_;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1U) result = result * base;
    if (e > 1) base = base * base;
  }
  return UnitaryMatrix(std::move(result));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(m_.adjoint(), Trusted{});
}

UnitaryMatrix matrix_exp(const HermitianOperator& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  const RVector& ev = es.eigenvalues();
  CVector phases(ev.size());
  for (Index k = 0; k < ev.size(); ++k) {
    phases(k) = std::polar(1.0, t * ev(k));
  }
  const CMatrix& v = es.eigenvectors();
  return UnitaryMatrix(v * phases.asDiagonal() * v.adjoint());
}

namespace {

void require_positive(int n, const char* where) {
  if (n < 1) {
    throw Error(ErrorKind::invalid_argument,
                std::string(where) + ": n must be at least 1");
  }
}

}  // namespace

UnitaryMatrix trotter_sum(const HermitianOperator& a,
                          const HermitianOperator& b, double alpha,
                          double beta, int n) {
  require_positive(n, "trotter_sum");
  require_same_dim(a, b, "trotter_sum");
  const double step = 1.0 / n;
  const UnitaryMatrix one = matrix_exp(a, alpha * step) * matrix_exp(b, beta * step);
  return one.pow(n);
}

UnitaryMatrix group_commutator(const HermitianOperator& a,
                               const HermitianOperator& b, int n) {
  require_positive(n, "group_commutator");
  require_same_dim(a, b, "group_commutator");
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  const UnitaryMatrix ea = matrix_exp(a, s);
  const UnitaryMatrix eb = matrix_exp(b, s);
  const UnitaryMatrix one = ea.adjoint() * eb * ea * eb.adjoint();
  return one.pow(n);
}

UnitaryMatrix commutator_exp(const HermitianOperator& a,
                             const HermitianOperator& b) {
  require_same_dim(a, b, "commutator_exp");
  // -i[A,B] = -lie_bracket(A,B)
  return matrix_exp(lie_bracket(a, b) * -1.0, 1.0);
}

double unitary_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.dim() != v.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "unitary_distance");
  }
  // ||U - e^{i phi} V|| = max_k |e^{i theta_k} - e^{i phi}| over the
  // eigenphases of V^dag U. The best phi sits in the middle of the shortest
  // arc holding every theta_k; aligning by arg Tr(V^dag U) instead is
  // ill-defined when that trace vanishes.
  const CMatrix w = v.matrix().adjoint() * u.matrix();
  Eigen::ComplexEigenSolver<CMatrix> es(w, false);
  std::vector<double> theta;
  theta.reserve(static_cast<std::size_t>(w.rows()));
  for (Index k = 0; k < w.rows(); ++k) theta.push_back(std::arg(es.eigenvalues()(k)));
  std::sort(theta.begin(), theta.end());
  double gap = 2.0 * std::numbers::pi - (theta.back() - theta.front());
  for (std::size_t k = 1; k < theta.size(); ++k) {
    gap = std::max(gap, theta[k] - theta[k - 1]);
  }
  const double arc = std::max(0.0, 2.0 * std::numbers::pi - gap);
  return 2.0 * std::sin(arc / 4.0);
}

std::string_view to_string(FormulaKind k) {
  return k == FormulaKind::trotter ? "trotter" : "commutator";
}

FormulaKind parse_formula_kind(std::string_view name) {
  if (name == "trotter") return FormulaKind::trotter;
  if (name == "commutator") return FormulaKind::commutator;
  throw Error(ErrorKind::config,
              "unknown product formula '" + std::string(name) + "'");
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) {
    throw Error(ErrorKind::invalid_argument, "fit_line: need >= 2 points");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (fit.slope * x[k] + fit.intercept);
    sse += r * r;
    fit.max_relative_residual =
        std::max(fit.max_relative_residual, std::abs(std::expm1(r)));
  }
  fit.slope_stderr = x.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
  return fit;
}

ScalingReport scaling_study(FormulaKind kind, const HermitianOperator& a,
                            const HermitianOperator& b, double alpha,
                            double beta, std::span<const int> n_list) {
  if (n_list.size() < 4) {
    throw Error(ErrorKind::invalid_argument,
                "scaling_study: needs at least four sample sizes");
  }
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) {
      throw Error(ErrorKind::invalid_argument,
                  "scaling_study: sample sizes must be strictly ascending");
    }
  }
  require_same_dim(a, b, "scaling_study");

  ScalingReport report;
  report.kind = kind;
  const HermitianOperator sa = a * alpha;
  const HermitianOperator sb = b * beta;
  const UnitaryMatrix target = kind == FormulaKind::trotter
                                   ? matrix_exp(sa + sb, 1.0)
                                   : commutator_exp(sa, sb);
  std::vector<double> xs;
  std::vector<double> ys;
  for (int n : n_list) {
    const UnitaryMatrix approx = kind == FormulaKind::trotter
                                     ? trotter_sum(a, b, alpha, beta, n)
                                     : group_commutator(sa, sb, n);
    const double err = unitary_distance(approx, target);
    report.samples.emplace_back(n, err);
    if (err <= kExactErrorThreshold) {
      ++report.exact_points;
      continue;
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(err));
  }
  if (xs.size() < 2) {
    report.exact = true;
    return report;
  }
  LineFit fit = fit_line(xs, ys);
  if (fit.max_relative_residual > 0.1 && xs.size() >= 5) {
    report.transients_dropped = true;
    xs.erase(xs.begin(), xs.begin() + 2);
    ys.erase(ys.begin(), ys.begin() + 2);
    fit = fit_line(xs, ys);
  }
  report.slope = fit.slope;
  report.slope_stderr = fit.slope_stderr;
  report.fitted_points = xs.size();
  return report;
}

}  // namespace eun
