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

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vanqver {

using Complex = std::complex<double>;

/// Thrown on qubit-count mismatches between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficients with magnitude at or below this are dropped from a PauliSum.
inline constexpr double kPruneThreshold = 1e-12;

/// Largest register that to_matrix / full_spectrum will densify.
inline constexpr int kDefaultDenseQubitCap = 14;

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * A tensor product of single-qubit Pauli operators on n qubits.
 *
 * Stored as an X-mask and a Z-mask in computational-basis bit positions:
 * qubit 0 is the most significant bit of a basis label (leftmost Kronecker
 * factor). A letter is X if only its x bit is set, Z if only z, Y if both.
 * The operator acts as  P|b> = i^{|x&z|} (-1)^{|b&z|} |b ^ x>.
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses a letter string such as "XIZY"; the first letter is qubit 0.
  static PauliString from_letters(std::string_view letters);
  /// A single letter on one qubit of an n-qubit register.
  static PauliString single(int n_qubits, int qubit, PauliLetter letter);

  int n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  PauliLetter letter(int qubit) const;
  void set_letter(int qubit, PauliLetter letter);

  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  /// Number of non-identity factors.
  int weight() const noexcept;
  /// True if every factor is I or Z.
  bool is_diagonal() const noexcept { return x_ == 0; }

  std::string to_letters() const;

  /// Bit of qubit q inside a basis label.
  std::uint64_t qubit_bit(int qubit) const noexcept {
    return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
  }

  /// Applies the string to basis state |b>, returning (amplitude, target).
  std::pair<Complex, std::uint64_t> act(std::uint64_t basis) const noexcept;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend bool operator<(const PauliString& a, const PauliString& b) noexcept {
    if (a.n_qubits_ != b.n_qubits_) return a.n_qubits_ < b.n_qubits_;
    if (a.x_ != b.x_) return a.x_ < b.x_;
    return a.z_ < b.z_;
  }

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Operator product a*b written as phase * product, phase in {1, i, -1, -i}.
struct PauliProduct {
  Complex phase;
  PauliString product;
};

PauliProduct multiply(const PauliString& a, const PauliString& b);

enum class CommutationMode { full, qubit_wise };

bool commutes(const PauliString& a, const PauliString& b,
              CommutationMode mode = CommutationMode::full);

/**
 * A weighted sum of Pauli strings on a fixed register.
 *
 * Like terms are merged on insertion and coefficients whose magnitude falls
 * to kPruneThreshold or below are removed, so an exactly cancelled sum is
 * empty. Iteration order is deterministic (ordered by X-mask, then Z-mask).
 */
class PauliSum {
 public:
  using TermMap = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}
  PauliSum(const PauliString& s, Complex coeff);

  /// Convenience constructor: {{"XX", 0.5}, {"YY", 0.5}}.
  static PauliSum from_terms(
      std::initializer_list<std::pair<std::string_view, Complex>> terms);
  static PauliSum identity(int n_qubits, Complex coeff = 1.0);

  int n_qubits() const noexcept { return n_qubits_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Coefficient of s, zero if absent.
  Complex coefficient(const PauliString& s) const;

  void add_term(const PauliString& s, Complex coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  /// Operator product.
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// True if all coefficients have |imag| <= tol.
  bool is_real(double tol = kPruneThreshold) const;
  /// Asserts real coefficients and zeroes the residual imaginary parts.
  void assert_hermitian(double tol = 1e-10);
  PauliSum adjoint() const;

  /// Sum of |coeff| over non-identity strings.
  double coefficient_one_norm(bool include_identity = false) const;

  /// Entry-wise comparison: max |coeff difference| over the union of terms.
  double max_abs_difference(const PauliSum& other) const;

 private:
  void check_compatible(const PauliSum& other) const;
  void check_string(const PauliString& s);

  int n_qubits_ = 0;
  TermMap terms_;
};

PauliSum add(const PauliSum& a, const PauliSum& b);
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Dense 2^n x 2^n matrix; qubit 0 is the leftmost Kronecker factor.
Eigen::MatrixXcd to_matrix(const PauliSum& h,
                           int qubit_cap = kDefaultDenseQubitCap);
Eigen::MatrixXcd to_matrix(const PauliString& s,
                           int qubit_cap = kDefaultDenseQubitCap);

/// y = h x for a full-register state vector.
void apply(const PauliSum& h, std::span<const Complex> x, std::span<Complex> y);

/// <psi|s|psi>. The state must be normalized within `norm_tol`.
double expectation_of_string(const PauliString& s,
                             std::span<const Complex> state,
                             double norm_tol = 1e-8);

/// Line-oriented text: "<re> <im> <letters>" per term.
void write_text(std::ostream& os, const PauliSum& h);
PauliSum read_text(std::istream& is);

}  // namespace vanqver
