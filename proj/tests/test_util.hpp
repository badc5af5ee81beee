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

#include <random>
#include <string>

#include <Eigen/Dense>

#include "vanqver/dynamics.hpp"
#include "vanqver/fermion.hpp"
#include "vanqver/pauli.hpp"

namespace vanqver::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(VANQVER_FIXTURE_DIR) + "/" + name;
}

inline PauliString random_string(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> letter(0, 3);
  PauliString s(n);
  for (int q = 0; q < n; ++q) s.set_letter(q, static_cast<PauliLetter>(letter(rng)));
  return s;
}

inline PauliSum random_real_sum(std::mt19937_64& rng, int n, int terms) {
  std::normal_distribution<double> coeff;
  PauliSum h(n);
  for (int k = 0; k < terms; ++k) h.add_term(random_string(rng, n), coeff(rng));
  return h;
}

/// Haar-like random state from complex Gaussian amplitudes.
inline StateVector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& x : a) x = {g(rng), g(rng)};
  StateVector s(n, std::move(a));
  s.normalize();
  return s;
}

/// Explicit Kronecker product with qubit 0 as the leftmost factor.
inline Eigen::MatrixXcd kron_letters(const std::string& letters) {
  using M = Eigen::Matrix2cd;
  const Complex i{0, 1};
  M I = M::Identity(), X, Y, Z;
  X << 0, 1, 1, 0;
  Y << 0, -i, i, 0;
  Z << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) {
    const M& f = c == 'X' ? X : c == 'Y' ? Y : c == 'Z' ? Z : I;
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < out.rows(); ++r) {
      for (int col = 0; col < out.cols(); ++col) {
        next.block(2 * r, 2 * col, 2, 2) = out(r, col) * f;
      }
    }
    out = next;
  }
  return out;
}

}  // namespace vanqver::test
