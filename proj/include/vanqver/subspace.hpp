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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vanqver/pauli.hpp"

namespace vanqver {

/**
 * An ordered set of computational basis states closed under a collection of
 * operators. Dynamics generated by those operators never leaves the span of
 * the set, so states and operators can be restricted to it exactly.
 */
class Subspace {
 public:
  Subspace() = default;

  /// All 2^n basis states.
  static Subspace full(int n_qubits);
  /// Smallest set containing `seeds` and closed under every nonzero matrix
  /// element of every operator in `ops`.
  static Subspace closure(int n_qubits, std::span<const std::uint64_t> seeds,
                          std::span<const PauliSum* const> ops);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return states_.size(); }
  std::uint64_t state(std::size_t k) const { return states_[k]; }
  const std::vector<std::uint64_t>& states() const noexcept { return states_; }
  std::optional<std::size_t> index_of(std::uint64_t basis) const;
  bool is_full() const noexcept {
    return states_.size() == (std::size_t{1} << n_qubits_);
  }

  /// Restricts a full-register vector; throws if it has weight outside.
  std::vector<Complex> restrict_vector(std::span<const Complex> full,
                                       double tol = 1e-12) const;
  std::vector<Complex> embed(std::span<const Complex> restricted) const;

 private:
  int n_qubits_ = 0;
  std::vector<std::uint64_t> states_;  // ascending
};

/**
 * Matrix <r|H|c> of a PauliSum on a Subspace, stored in compressed rows.
 */
class SubspaceOperator {
 public:
  SubspaceOperator() = default;
  /// The subspace must be closed under h.
  SubspaceOperator(const PauliSum& h, const Subspace& basis);

  /// sum_k w_k ops_k; all ops must share a dimension.
  static SubspaceOperator linear_combination(
      std::span<const double> weights,
      std::span<const SubspaceOperator* const> ops, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool is_real() const noexcept { return real_; }
  bool empty() const noexcept { return values_.empty(); }

  /// y = H x
  void apply(const Complex* x, Complex* y) const;
  /// y += scale * H x
  void apply_add(Complex scale, const Complex* x, Complex* y) const;
  /// <bra|H|ket>
  Complex sandwich(const Complex* bra, const Complex* ket) const;

  /// dense += scale * H, row-major dim x dim. Real overload needs is_real().
  void add_to(double scale, double* dense) const;
  void add_to(Complex scale, Complex* dense) const;

  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::uint32_t>& cols() const noexcept { return cols_; }
  const std::vector<Complex>& values() const noexcept { return values_; }

 private:
  std::size_t dim_ = 0;
  bool real_ = true;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> cols_;
  std::vector<Complex> values_;
};

}  // namespace vanqver
