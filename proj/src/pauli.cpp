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

#include "eun/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "eun/error.hpp"

namespace eun {

char to_char(Pauli p) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[static_cast<int>(p)];
}

std::string PauliTerm::axes_string() const {
  std::string s;
  s.reserve(axes.size());
  for (Pauli p : axes) s.push_back(to_char(p));
  return s;
}

OperatorExpression::OperatorExpression(int n_qubits,
                                       std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits) {
  if (n_qubits < 1) {
    throw Error(ErrorKind::invalid_argument,
                "OperatorExpression: register size must be positive");
  }
  std::map<std::string, PauliTerm> merged;
  for (auto& t : terms) {
    if (static_cast<int>(t.axes.size()) != n_qubits) {
      throw Error(ErrorKind::invalid_argument,
                  "OperatorExpression: term length " +
                      std::to_string(t.axes.size()) + " != register size " +
                      std::to_string(n_qubits));
    }
    if (!std::isfinite(t.coefficient)) {
      throw Error(ErrorKind::invalid_argument,
                  "OperatorExpression: non-finite coefficient");
    }
    auto key = t.axes_string();
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(t));
    } else {
      it->second.coefficient += t.coefficient;
    }
  }
  for (auto& [key, t] : merged) {
    if (t.coefficient != 0.0) terms_.push_back(std::move(t));
  }
}

namespace {

std::string format_coefficient(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

}  // namespace

std::string OperatorExpression::to_string() const {
  if (terms_.empty()) {
    return "0*" + std::string(static_cast<std::size_t>(n_qubits_), 'I');
  }
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const double c = t.coefficient;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += format_coefficient(std::abs(c));
    out += "*";
    out += t.axes_string();
    first = false;
  }
  return out;
}

namespace {

constexpr std::string_view kAlphabet = "IXYZ0123456789.eE+-* \t\r\n";

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

bool is_pauli(char c) {
  return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

Pauli pauli_from(char c) {
  switch (c) {
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: return Pauli::I;
  }
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, int n) : text_(text), n_(n) {}

  OperatorExpression parse() {
    // Foreign characters are reported as such, wherever they occur.
    const std::size_t bad = text_.find_first_not_of(kAlphabet);
    if (bad != std::string_view::npos) fail_at(bad, "");
    skip_space();
    if (at_end()) {
      throw ParseError(ParseError::Reason::empty_expression, pos_,
                       "empty Pauli expression");
    }
    std::vector<PauliTerm> terms;
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    for (;;) {
      terms.push_back(parse_term(sign));
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1.0 : 1.0;
        ++pos_;
        continue;
      }
      fail_at(pos_, "expected '+' or '-' between terms");
    }
    return OperatorExpression(n_, std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    if (pos < text_.size() &&
        kAlphabet.find(text_[pos]) == std::string_view::npos) {
      throw ParseError(ParseError::Reason::unknown_character, pos,
                       "unknown character '" + std::string(1, text_[pos]) +
                           "' at position " + std::to_string(pos));
    }
    if (pos >= text_.size()) {
      throw ParseError(ParseError::Reason::syntax, pos,
                       msg + " (unexpected end of expression)");
    }
    throw ParseError(ParseError::Reason::syntax, pos,
                     msg + " at position " + std::to_string(pos));
  }

  PauliTerm parse_term(double sign) {
    skip_space();
    PauliTerm term;
    term.coefficient = sign;
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                      peek() == '.')) {
      term.coefficient *= parse_number();
      skip_space();
      if (at_end() || peek() != '*') fail_at(pos_, "expected '*'");
      ++pos_;
      skip_space();
    }
    const std::size_t start = pos_;
    while (!at_end()) {
      const char c = peek();
      if (is_pauli(c)) {
        term.axes.push_back(pauli_from(c));
        ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else {
        break;
      }
    }
    // Trailing whitespace belongs to the separator, not the string.
    if (term.axes.empty()) fail_at(start, "expected a Pauli string");
    if (static_cast<int>(term.axes.size()) != n_) {
      throw ParseError(ParseError::Reason::length_mismatch, start,
                       "Pauli string at position " + std::to_string(start) +
                           " has " + std::to_string(term.axes.size()) +
                           " letters, expected " + std::to_string(n_));
    }
    if (!at_end() && peek() != '+' && peek() != '-') {
      fail_at(pos_, "unexpected character after Pauli string");
    }
    return term;
  }

  double parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
      }
    };
    digits();
    if (!at_end() && peek() == '.') {
      ++pos_;
      digits();
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      const std::size_t exp_start = pos_;
      digits();
      if (pos_ == exp_start) fail_at(pos_, "malformed exponent");
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range ||
        (ec == std::errc() && !std::isfinite(value))) {
      throw ParseError(ParseError::Reason::non_finite_number, start,
                       "non-finite coefficient at position " +
                           std::to_string(start));
    }
    if (ec != std::errc() || ptr != last) {
      fail_at(start, "malformed number");
    }
    return value;
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

OperatorExpression parse_pauli_expression(std::string_view text,
                                          int n_qubits) {
  if (n_qubits < 1) {
    throw Error(ErrorKind::invalid_argument,
                "parse_pauli_expression: register size must be positive");
  }
  return ExpressionParser(text, n_qubits).parse();
}

HermitianOperator realize(const OperatorExpression& expr, int max_qubits) {
  const int n = expr.n_qubits();
  if (n < 1) {
    throw Error(ErrorKind::invalid_argument, "realize: empty register");
  }
  if (n > max_qubits) {
    throw Error(ErrorKind::resource_limit,
                "realize: " + std::to_string(n) +
                    " qubits exceeds the configured maximum of " +
                    std::to_string(max_qubits));
  }
  const Index dim = Index{1} << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& term : expr.terms()) {
    std::uint64_t flip = 0;
    for (int q = 0; q < n; ++q) {
      const Pauli p = term.axes[static_cast<std::size_t>(q)];
      if (p == Pauli::X || p == Pauli::Y) flip |= std::uint64_t{1} << (n - 1 - q);
    }
    for (Index col = 0; col < dim; ++col) {
      Complex phase = term.coefficient;
      for (int q = 0; q < n; ++q) {
        const bool bit = (static_cast<std::uint64_t>(col) >> (n - 1 - q)) & 1U;
        switch (term.axes[static_cast<std::size_t>(q)]) {
          case Pauli::Z:
            if (bit) phase = -phase;
            break;
          case Pauli::Y:
            // Y|0> = i|1>, Y|1> = -i|0>
            phase *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
            break;
          default:
            break;
        }
      }
      const Index row = static_cast<Index>(static_cast<std::uint64_t>(col) ^ flip);
      m(row, col) += phase;
    }
  }
  return HermitianOperator(std::move(m));
}

namespace {

void check_edge(int i, int j, int n, const char* where) {
  if (i < 1 || j < 1 || i > n || j > n) {
    std::ostringstream os;
    os << where << ": qubit index out of range (" << i << ", " << j
       << ") for " << n << " qubits";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  if (i == j) {
    throw Error(ErrorKind::invalid_argument,
                std::string(where) + ": self-coupling i = j = " +
                    std::to_string(i));
  }
}

OperatorExpression pair_expression(int n, int i, int j, double jx, double jy,
                                   double jz) {
  std::vector<PauliTerm> terms;
  auto add = [&](double c, Pauli p) {
    if (c == 0.0) return;
    PauliTerm t;
    t.coefficient = c;
    t.axes.assign(static_cast<std::size_t>(n), Pauli::I);
    t.axes[static_cast<std::size_t>(i - 1)] = p;
    t.axes[static_cast<std::size_t>(j - 1)] = p;
    terms.push_back(std::move(t));
  };
  add(jx, Pauli::X);
  add(jy, Pauli::Y);
  add(jz, Pauli::Z);
  return OperatorExpression(n, std::move(terms));
}

}  // namespace

HermitianOperator build_exchange(int i, int j, int n_qubits) {
  check_edge(i, j, n_qubits, "build_exchange");
  return realize(pair_expression(n_qubits, i, j, 1.0, 1.0, 1.0));
}

OperatorExpression total_z(int n_qubits) {
  std::vector<PauliTerm> terms;
  for (int q = 0; q < n_qubits; ++q) {
    PauliTerm t;
    t.axes.assign(static_cast<std::size_t>(n_qubits), Pauli::I);
    t.axes[static_cast<std::size_t>(q)] = Pauli::Z;
    terms.push_back(std::move(t));
  }
  return OperatorExpression(n_qubits, std::move(terms));
}

std::string_view to_string(Model m) {
  switch (m) {
    case Model::isotropic: return "isotropic";
    case Model::anisotropic: return "anisotropic";
    case Model::xy: return "xy";
    case Model::custom: return "custom";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "isotropic") return Model::isotropic;
  if (name == "anisotropic") return Model::anisotropic;
  if (name == "xy") return Model::xy;
  if (name == "custom") return Model::custom;
  throw Error(ErrorKind::config, "unknown model '" + std::string(name) + "'");
}

void HamiltonianSpec::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::config, "HamiltonianSpec: " + msg);
  };
  if (n_qubits < 1) fail("n_qubits must be positive");
  if (model == Model::custom) {
    if (custom_expressions.empty()) fail("custom model needs expressions");
    for (const auto& e : custom_expressions) {
      if (e.n_qubits() != n_qubits) {
        fail("custom expression '" + e.to_string() + "' acts on " +
             std::to_string(e.n_qubits()) + " qubits, expected " +
             std::to_string(n_qubits));
      }
    }
    return;
  }
  if (couplings.empty()) fail("no coupling edges");
  std::set<std::pair<int, int>> seen;
  for (const auto& c : couplings) {
    std::ostringstream edge;
    edge << "edge (" << c.i << "," << c.j << ")";
    if (c.i == c.j) fail("self-edge " + edge.str());
    if (c.i < 1 || c.j > n_qubits || c.i >= c.j) {
      fail(edge.str() + " violates 1 <= i < j <= n");
    }
    if (!seen.emplace(c.i, c.j).second) fail("duplicate " + edge.str());
    if (!std::isfinite(c.jx) || !std::isfinite(c.jy) || !std::isfinite(c.jz)) {
      fail("non-finite coupling on " + edge.str());
    }
    if (model == Model::isotropic && !(c.jx == c.jy && c.jy == c.jz)) {
      fail("isotropic model requires JX = JY = JZ on " + edge.str());
    }
    if (model == Model::xy && !(c.jz == 0.0 && c.jx == c.jy)) {
      fail("xy model requires JZ = 0 and JX = JY on " + edge.str());
    }
  }
}

std::vector<Coupling> all_pairs(int n_qubits, double jx, double jy,
                                double jz) {
  std::vector<Coupling> out;
  for (int i = 1; i <= n_qubits; ++i) {
    for (int j = i + 1; j <= n_qubits; ++j) out.push_back({i, j, jx, jy, jz});
  }
  return out;
}

std::vector<Coupling> chain(int n_qubits, double jx, double jy, double jz) {
  std::vector<Coupling> out;
  for (int i = 1; i < n_qubits; ++i) out.push_back({i, i + 1, jx, jy, jz});
  return out;
}

Coupling unit_coupling(Model m, int i, int j) {
  if (m == Model::xy) return {i, j, 1.0, 1.0, 0.0};
  return {i, j, 1.0, 1.0, 1.0};
}

std::vector<HermitianOperator> build_model(const HamiltonianSpec& spec,
                                           int max_qubits) {
  spec.validate();
  std::vector<HermitianOperator> out;
  if (spec.model == Model::custom) {
    for (const auto& e : spec.custom_expressions) {
      out.push_back(realize(e, max_qubits));
    }
    return out;
  }
  for (const auto& c : spec.couplings) {
    out.push_back(realize(
        pair_expression(spec.n_qubits, c.i, c.j, c.jx, c.jy, c.jz),
        max_qubits));
  }
  return out;
}

}  // namespace eun
