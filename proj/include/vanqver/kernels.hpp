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
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace vanqver::kernels {

using Complex = std::complex<double>;

/**
 * Data-parallel inner loops of the propagator. Every table implements the
 * same contract; the scalar table is the reference the SIMD tables are
 * tested against. Complex vectors are interleaved (re, im) and matrices are
 * row-major.
 */
struct KernelTable {
  std::string_view name;

  /// sum_k conj(x_k) y_k
  Complex (*dotc)(std::size_t n, const Complex* x, const Complex* y);
  /// sum_k |x_k|^2
  double (*norm2)(std::size_t n, const Complex* x);
  /// y += a x
  void (*axpy)(std::size_t n, Complex a, const Complex* x, Complex* y);
  /// y = A x, A complex rows x cols
  void (*gemv)(std::size_t rows, std::size_t cols, const Complex* a,
               const Complex* x, Complex* y);
  /// y = A x, A real rows x cols
  void (*gemv_real)(std::size_t rows, std::size_t cols, const double* a,
                    const Complex* x, Complex* y);
  /// y = d .* x (real diagonal)
  void (*diag_mul)(std::size_t n, const double* d, const Complex* x, Complex* y);
};

const KernelTable& scalar_table();
/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

/// Best table for this CPU unless VANQVER_KERNELS=scalar is set.
const KernelTable& active();
/// Overrides the active table ("scalar" or "avx2"); returns false if
/// unavailable.
bool select(std::string_view name);
std::vector<std::string_view> available();

// Span conveniences over the active table.
inline Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
  return active().dotc(x.size(), x.data(), y.data());
}
inline double norm2(std::span<const Complex> x) {
  return active().norm2(x.size(), x.data());
}
inline void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  active().axpy(x.size(), a, x.data(), y.data());
}

}  // namespace vanqver::kernels
