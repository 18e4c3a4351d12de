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

#include "eun/hermitian.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "eun/error.hpp"

namespace eun {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::not_hermitian: return "not_hermitian";
    case ErrorKind::parse: return "parse";
    case ErrorKind::config: return "config";
    case ErrorKind::resource_limit: return "resource_limit";
    case ErrorKind::tolerance: return "tolerance";
    case ErrorKind::retry_exhausted: return "retry_exhausted";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

std::string_view to_string(ParseError::Reason reason) {
  switch (reason) {
    case ParseError::Reason::length_mismatch: return "length_mismatch";
    case ParseError::Reason::unknown_character: return "unknown_character";
    case ParseError::Reason::empty_expression: return "empty_expression";
    case ParseError::Reason::non_finite_number: return "non_finite_number";
    case ParseError::Reason::syntax: return "syntax";
  }
  return "unknown";
}

ParseError::ParseError(Reason reason, std::size_t position,
                       const std::string& what)
    : Error(ErrorKind::parse, what), reason_(reason), position_(position) {}

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  double worst = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

std::optional<int> log2_exact(Index dim) {
  if (dim <= 0) return std::nullopt;
  const auto u = static_cast<std::uint64_t>(dim);
  if (!std::has_single_bit(u)) return std::nullopt;
  return std::countr_zero(u);
}

HermitianOperator::HermitianOperator(CMatrix m, double tolerance)
    : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw Error(ErrorKind::invalid_argument,
                "HermitianOperator: matrix must be square and non-empty");
  }
  if (!m_.allFinite()) {
    throw Error(ErrorKind::not_hermitian,
                "HermitianOperator: non-finite entries");
  }
  const double defect = hermiticity_defect(m_);
  if (defect > tolerance) {
    std::ostringstream os;
    os << "HermitianOperator: hermiticity defect " << defect
       << " exceeds tolerance " << tolerance;
    throw Error(ErrorKind::not_hermitian, os.str());
  }
}

HermitianOperator HermitianOperator::symmetrized(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::invalid_argument,
                "HermitianOperator: matrix must be square and non-empty");
  }
  CMatrix h = 0.5 * (m + m.adjoint());
  return HermitianOperator(std::move(h), Trusted{});
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim), Trusted{});
}

std::optional<int> HermitianOperator::n_qubits() const {
  return log2_exact(dim());
}

HermitianOperator HermitianOperator::operator+(
    const HermitianOperator& o) const {
  require_same_dim(*this, o, "HermitianOperator::operator+");
  return HermitianOperator(m_ + o.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(
    const HermitianOperator& o) const {
  require_same_dim(*this, o, "HermitianOperator::operator-");
  return HermitianOperator(m_ - o.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(m_ * s, Trusted{});
}

// i(AB - BA) = i(C - C^dag) with C = AB; entries (k,l) and (l,k) are exact
// conjugates, so the result is Hermitian bit-for-bit.
HermitianOperator lie_bracket(const HermitianOperator& a,
                              const HermitianOperator& b) {
  require_same_dim(a, b, "lie_bracket");
  const CMatrix c = a.m_ * b.m_;
  CMatrix out = Complex(0.0, 1.0) * (c - c.adjoint());
  return HermitianOperator(std::move(out), HermitianOperator::Trusted{});
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  return (a * b - b * a).norm();
}

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b,
                      const char* where) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << where << ": dimension mismatch (" << a.dim() << " vs " << b.dim()
       << ")";
    throw Error(ErrorKind::dimension_mismatch, os.str());
  }
}

void require_same_dim(std::span<const HermitianOperator> ops,
                      const char* where) {
  for (std::size_t k = 1; k < ops.size(); ++k) {
    require_same_dim(ops[0], ops[k], where);
  }
}

}  // namespace eun
