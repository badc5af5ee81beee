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

#include "vanqver/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>
#include <unordered_set>

namespace vanqver {

Subspace Subspace::full(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw std::invalid_argument("full subspace needs 1..30 qubits");
  }
  Subspace s;
  s.n_qubits_ = n_qubits;
  s.states_.resize(std::size_t{1} << n_qubits);
  for (std::size_t k = 0; k < s.states_.size(); ++k) s.states_[k] = k;
  return s;
}

Subspace Subspace::closure(int n_qubits, std::span<const std::uint64_t> seeds,
                           std::span<const PauliSum* const> ops) {
  // Group strings by X-mask within each operator: strings with the same mask
  // move |b> to the same target, so their amplitudes must be summed before
  // testing for zero. Operators are kept apart since they may later be
  // combined with arbitrary weights.
  using Group = std::vector<std::pair<const PauliString*, Complex>>;
  std::vector<std::map<std::uint64_t, Group>> by_flip;
  for (const PauliSum* op : ops) {
    if (op == nullptr || op->empty()) continue;
    if (op->n_qubits() != n_qubits) {
      throw DimensionError("closure operator acts on a different register");
    }
    auto& groups = by_flip.emplace_back();
    for (const auto& [s, c] : op->terms()) {
      if (s.x_mask() != 0) groups[s.x_mask()].emplace_back(&s, c);
    }
  }
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::uint64_t> frontier;
  for (std::uint64_t b : seeds) {
    if (n_qubits < 64 && (b >> n_qubits) != 0) {
      throw std::invalid_argument("seed state outside the register");
    }
    if (seen.insert(b).second) frontier.push_back(b);
  }
  while (!frontier.empty()) {
    const std::uint64_t b = frontier.front();
    frontier.pop_front();
    for (const auto& groups : by_flip) {
      for (const auto& [flip, terms] : groups) {
        Complex amp{};
        for (const auto& [s, c] : terms) amp += c * s->act(b).first;
        if (std::abs(amp) <= kPruneThreshold) continue;
        const std::uint64_t target = b ^ flip;
        if (seen.insert(target).second) frontier.push_back(target);
      }
    }
  }
  Subspace out;
  out.n_qubits_ = n_qubits;
  out.states_.assign(seen.begin(), seen.end());
  std::sort(out.states_.begin(), out.states_.end());
  return out;
}

std::optional<std::size_t> Subspace::index_of(std::uint64_t basis) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), basis);
  if (it == states_.end() || *it != basis) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::vector<Complex> Subspace::restrict_vector(std::span<const Complex> full,
                                               double tol) const {
  if (full.size() != (std::size_t{1} << n_qubits_)) {
    throw DimensionError("vector length does not match the register");
  }
  std::vector<Complex> out(dim());
  double inside = 0.0, total = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) {
    out[k] = full[states_[k]];
    inside += std::norm(out[k]);
  }
  for (const auto& a : full) total += std::norm(a);
  if (total - inside > tol) {
    throw std::invalid_argument("state has weight outside the subspace");
  }
  return out;
}

std::vector<Complex> Subspace::embed(std::span<const Complex> restricted) const {
  if (restricted.size() != dim()) throw DimensionError("restricted length mismatch");
  std::vector<Complex> out(std::size_t{1} << n_qubits_);
  for (std::size_t k = 0; k < dim(); ++k) out[states_[k]] = restricted[k];
  return out;
}

// ---------------------------------------------------------------------------

SubspaceOperator::SubspaceOperator(const PauliSum& h, const Subspace& basis)
    : dim_(basis.dim()) {
  if (!h.empty() && h.n_qubits() != basis.n_qubits()) {
    throw DimensionError("operator and subspace registers differ");
  }
  // Column-wise scatter into per-row maps, then compress.
  // Strings sharing an X-mask can cancel on a given column, so leakage is
  // judged on the summed amplitude per target, as in closure().
  std::vector<std::map<std::uint32_t, Complex>> rows(dim_);
  std::map<std::uint64_t, Complex> outside;
  for (std::size_t c = 0; c < dim_; ++c) {
    const std::uint64_t b = basis.state(c);
    outside.clear();
    for (const auto& [s, coeff] : h.terms()) {
      auto [amp, target] = s.act(b);
      if (auto r = basis.index_of(target)) {
        rows[*r][static_cast<std::uint32_t>(c)] += coeff * amp;
      } else {
        outside[target] += coeff * amp;
      }
    }
    for (const auto& [target, amp] : outside) {
      if (std::abs(amp) > kPruneThreshold) {
        throw std::logic_error("subspace is not closed under the operator (basis " +
                               std::to_string(b) + " -> " +
                               std::to_string(target) + ")");
      }
    }
  }
  row_ptr_.assign(1, 0);
  for (const auto& row : rows) {
    for (const auto& [c, v] : row) {
      if (std::abs(v) <= kPruneThreshold) continue;
      cols_.push_back(c);
      values_.push_back(v);
      if (std::abs(v.imag()) > kPruneThreshold) real_ = false;
    }
    row_ptr_.push_back(values_.size());
  }
}

SubspaceOperator SubspaceOperator::linear_combination(
    std::span<const double> weights,
    std::span<const SubspaceOperator* const> ops, std::size_t dim) {
  if (weights.size() != ops.size()) throw DimensionError("weight count mismatch");
  SubspaceOperator out;
  out.dim_ = dim;
  std::vector<Complex> row(dim);
  std::vector<char> touched(dim, 0);
  std::vector<std::uint32_t> touched_cols;
  for (const auto* op : ops) {
    if (op->dim_ != dim) throw DimensionError("operator dimension mismatch");
  }
  for (std::size_t r = 0; r < dim; ++r) {
    touched_cols.clear();
    for (std::size_t k = 0; k < ops.size(); ++k) {
      if (weights[k] == 0.0) continue;
      const auto& op = *ops[k];
      for (std::size_t e = op.row_ptr_[r]; e < op.row_ptr_[r + 1]; ++e) {
        const std::uint32_t c = op.cols_[e];
        if (!touched[c]) {
          touched[c] = 1;
          touched_cols.push_back(c);
        }
        row[c] += weights[k] * op.values_[e];
      }
    }
    std::sort(touched_cols.begin(), touched_cols.end());
    for (std::uint32_t c : touched_cols) {
      if (std::abs(row[c]) > kPruneThreshold) {
        out.cols_.push_back(c);
        out.values_.push_back(row[c]);
        if (std::abs(row[c].imag()) > kPruneThreshold) out.real_ = false;
      }
      row[c] = {};
      touched[c] = 0;
    }
    out.row_ptr_.push_back(out.values_.size());
  }
  return out;
}

void SubspaceOperator::apply(const Complex* x, Complex* y) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{};
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      acc += values_[e] * x[cols_[e]];
    }
    y[r] = acc;
  }
}

void SubspaceOperator::apply_add(Complex scale, const Complex* x, Complex* y) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{};
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      acc += values_[e] * x[cols_[e]];
    }
    y[r] += scale * acc;
  }
}

Complex SubspaceOperator::sandwich(const Complex* bra, const Complex* ket) const {
  Complex total{};
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{};
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      acc += values_[e] * ket[cols_[e]];
    }
    total += std::conj(bra[r]) * acc;
  }
  return total;
}

void SubspaceOperator::add_to(double scale, double* dense) const {
  if (!real_) throw std::logic_error("real densification of a complex operator");
  for (std::size_t r = 0; r < dim_; ++r) {
    double* row = dense + r * dim_;
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      row[cols_[e]] += scale * values_[e].real();
    }
  }
}

void SubspaceOperator::add_to(Complex scale, Complex* dense) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex* row = dense + r * dim_;
    for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
      row[cols_[e]] += scale * values_[e];
    }
  }
}

}  // namespace vanqver
