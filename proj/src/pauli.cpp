// Copyright 2026 The VanQver Simulator Authors
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

#include "vanqver/pauli.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace vanqver {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Complex i_power(int k) { return kPhases[((k % 4) + 4) % 4]; }

void check_register(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 63) {
    throw std::invalid_argument("qubit count must be in [1, 63], got " +
                                std::to_string(n_qubits));
  }
}

void check_same_register(int a, int b) {
  if (a != b) {
    throw DimensionError("qubit-count mismatch: " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
  check_register(n_qubits);
}

PauliString::PauliString(int n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  check_register(n_qubits);
  const std::uint64_t full = (std::uint64_t{1} << n_qubits) - 1;
  if ((x_mask | z_mask) & ~full) {
    throw std::invalid_argument("Pauli mask has bits beyond the register");
  }
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString s(static_cast<int>(letters.size()));
  for (int q = 0; q < s.n_qubits_; ++q) {
    switch (letters[q]) {
      case 'I': break;
      case 'X': s.set_letter(q, PauliLetter::X); break;
      case 'Y': s.set_letter(q, PauliLetter::Y); break;
      case 'Z': s.set_letter(q, PauliLetter::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" +
                                    std::string(1, letters[q]) + "'");
    }
  }
  return s;
}

PauliString PauliString::single(int n_qubits, int qubit, PauliLetter letter) {
  PauliString s(n_qubits);
  s.set_letter(qubit, letter);
  return s;
}

PauliLetter PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) throw std::out_of_range("qubit index");
  const std::uint64_t bit = qubit_bit(qubit);
  const bool x = x_ & bit;
  const bool z = z_ & bit;
  if (x && z) return PauliLetter::Y;
  if (x) return PauliLetter::X;
  if (z) return PauliLetter::Z;
  return PauliLetter::I;
}

void PauliString::set_letter(int qubit, PauliLetter letter) {
  if (qubit < 0 || qubit >= n_qubits_) throw std::out_of_range("qubit index");
  const std::uint64_t bit = qubit_bit(qubit);
  x_ &= ~bit;
  z_ &= ~bit;
  if (letter == PauliLetter::X || letter == PauliLetter::Y) x_ |= bit;
  if (letter == PauliLetter::Z || letter == PauliLetter::Y) z_ |= bit;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

std::string PauliString::to_letters() const {
  std::string out(n_qubits_, 'I');
  for (int q = 0; q < n_qubits_; ++q) out[q] = "IXYZ"[static_cast<int>(letter(q))];
  return out;
}

std::pair<Complex, std::uint64_t> PauliString::act(
    std::uint64_t basis) const noexcept {
  int k = std::popcount(x_ & z_) + 2 * (std::popcount(basis & z_) & 1);
  return {i_power(k), basis ^ x_};
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  check_same_register(a.n_qubits(), b.n_qubits());
  // P = i^{|x&z|} X^x Z^z;  Z^{z1} X^{x2} = (-1)^{|z1&x2|} X^{x2} Z^{z1}.
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int k = std::popcount(a.x_mask() & a.z_mask()) +
                std::popcount(b.x_mask() & b.z_mask()) - std::popcount(x & z) +
                2 * std::popcount(a.z_mask() & b.x_mask());
  return {i_power(k), PauliString(a.n_qubits(), x, z)};
}

bool commutes(const PauliString& a, const PauliString& b, CommutationMode mode) {
  check_same_register(a.n_qubits(), b.n_qubits());
  if (mode == CommutationMode::full) {
    const int symplectic = std::popcount(a.x_mask() & b.z_mask()) +
                           std::popcount(a.z_mask() & b.x_mask());
    return (symplectic & 1) == 0;
  }
  // Per qubit: compatible when either factor is I or both letters agree.
  const std::uint64_t support_a = a.x_mask() | a.z_mask();
  const std::uint64_t support_b = b.x_mask() | b.z_mask();
  const std::uint64_t both = support_a & support_b;
  const std::uint64_t differ =
      ((a.x_mask() ^ b.x_mask()) | (a.z_mask() ^ b.z_mask())) & both;
  return differ == 0;
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(const PauliString& s, Complex coeff)
    : n_qubits_(s.n_qubits()) {
  add_term(s, coeff);
}

PauliSum PauliSum::from_terms(
    std::initializer_list<std::pair<std::string_view, Complex>> terms) {
  if (terms.size() == 0) throw std::invalid_argument("empty term list");
  PauliSum out(static_cast<int>(terms.begin()->first.size()));
  for (const auto& [letters, c] : terms) {
    out.add_term(PauliString::from_letters(letters), c);
  }
  return out;
}

PauliSum PauliSum::identity(int n_qubits, Complex coeff) {
  return PauliSum(PauliString(n_qubits), coeff);
}

Complex PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::check_string(const PauliString& s) {
  if (n_qubits_ == 0) n_qubits_ = s.n_qubits();
  check_same_register(n_qubits_, s.n_qubits());
}

void PauliSum::add_term(const PauliString& s, Complex coeff) {
  check_string(s);
  auto [it, inserted] = terms_.try_emplace(s, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) <= kPruneThreshold) terms_.erase(it);
}

void PauliSum::check_compatible(const PauliSum& other) const {
  if (n_qubits_ != 0 && other.n_qubits_ != 0) {
    check_same_register(n_qubits_, other.n_qubits_);
  }
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_compatible(other);
  if (n_qubits_ == 0) n_qubits_ = other.n_qubits_;
  for (const auto& [s, c] : other.terms_) add_term(s, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_compatible(other);
  if (n_qubits_ == 0) n_qubits_ = other.n_qubits_;
  for (const auto& [s, c] : other.terms_) add_term(s, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) <= kPruneThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  a.check_compatible(b);
  PauliSum out(a.n_qubits_ != 0 ? a.n_qubits_ : b.n_qubits_);
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) {
      auto [phase, prod] = multiply(sa, sb);
      out.add_term(prod, phase * ca * cb);
    }
  }
  return out;
}

bool PauliSum::is_real(double tol) const {
  for (const auto& [s, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

void PauliSum::assert_hermitian(double tol) {
  for (auto& [s, c] : terms_) {
    if (std::abs(c.imag()) > tol) {
      throw std::logic_error("Hamiltonian term " + s.to_letters() +
                             " has imaginary coefficient " +
                             std::to_string(c.imag()));
    }
    c = {c.real(), 0.0};
  }
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto& [s, c] : terms_) out.terms_.emplace(s, std::conj(c));
  return out;
}

double PauliSum::coefficient_one_norm(bool include_identity) const {
  double total = 0.0;
  for (const auto& [s, c] : terms_) {
    if (include_identity || !s.is_identity()) total += std::abs(c);
  }
  return total;
}

double PauliSum::max_abs_difference(const PauliSum& other) const {
  double worst = 0.0;
  for (const auto& [s, c] : terms_) {
    worst = std::max(worst, std::abs(c - other.coefficient(s)));
  }
  for (const auto& [s, c] : other.terms_) {
    if (!terms_.contains(s)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

PauliSum add(const PauliSum& a, const PauliSum& b) { return a + b; }

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  return a * b - b * a;
}

// ---------------------------------------------------------------------------

namespace {

void check_dense_cap(int n_qubits, int cap) {
  if (n_qubits > cap) {
    throw std::length_error("dense matrix of " + std::to_string(n_qubits) +
                            " qubits exceeds the cap of " +
                            std::to_string(cap));
  }
}

void accumulate_string(const PauliString& s, Complex c, Eigen::MatrixXcd& m) {
  const std::uint64_t dim = std::uint64_t{1} << s.n_qubits();
  for (std::uint64_t col = 0; col < dim; ++col) {
    auto [amp, row] = s.act(col);
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
        c * amp;
  }
}

}  // namespace

Eigen::MatrixXcd to_matrix(const PauliSum& h, int qubit_cap) {
  if (h.n_qubits() == 0) throw std::invalid_argument("PauliSum without a register");
  check_dense_cap(h.n_qubits(), qubit_cap);
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : h.terms()) accumulate_string(s, c, m);
  return m;
}

Eigen::MatrixXcd to_matrix(const PauliString& s, int qubit_cap) {
  check_dense_cap(s.n_qubits(), qubit_cap);
  const Eigen::Index dim = Eigen::Index{1} << s.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  accumulate_string(s, 1.0, m);
  return m;
}

void apply(const PauliSum& h, std::span<const Complex> x, std::span<Complex> y) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  if (x.size() != dim || y.size() != dim) {
    throw DimensionError("state length does not match the operator register");
  }
  std::fill(y.begin(), y.end(), Complex{});
  for (const auto& [s, c] : h.terms()) {
    for (std::size_t b = 0; b < dim; ++b) {
      auto [amp, target] = s.act(b);
      y[target] += c * amp * x[b];
    }
  }
}

double expectation_of_string(const PauliString& s,
                             std::span<const Complex> state, double norm_tol) {
  const std::size_t dim = std::size_t{1} << s.n_qubits();
  if (state.size() != dim) {
    throw DimensionError("state length " + std::to_string(state.size()) +
                         " does not match 2^" + std::to_string(s.n_qubits()));
  }
  double norm2 = 0.0;
  for (const auto& a : state) norm2 += std::norm(a);
  if (std::abs(std::sqrt(norm2) - 1.0) > norm_tol) {
    throw std::invalid_argument("state is not normalized (norm " +
                                std::to_string(std::sqrt(norm2)) + ")");
  }
  Complex acc{};
  for (std::size_t b = 0; b < dim; ++b) {
    auto [amp, target] = s.act(b);
    acc += std::conj(state[target]) * amp * state[b];
  }
  return acc.real();
}

void write_text(std::ostream& os, const PauliSum& h) {
  std::ostringstream line;
  line.precision(17);
  for (const auto& [s, c] : h.terms()) {
    line.str({});
    line << c.real() << ' ' << c.imag() << ' ' << s.to_letters() << '\n';
    os << line.str();
  }
}

PauliSum read_text(std::istream& is) {
  PauliSum out;
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream line(raw);
    double re = 0.0, im = 0.0;
    std::string letters;
    if (!(line >> re >> im >> letters)) {
      throw std::invalid_argument("malformed Pauli term on line " +
                                  std::to_string(lineno));
    }
    out.add_term(PauliString::from_letters(letters), {re, im});
  }
  return out;
}

}  // namespace vanqver
