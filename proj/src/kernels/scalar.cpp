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

#include "vanqver/kernels.hpp"

namespace vanqver::kernels {
namespace {

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    const double yr = y[k].real(), yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm2(std::size_t n, const Complex* x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  }
  return acc;
}

void axpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = {y[k].real() + ar * xr - ai * xi, y[k].imag() + ar * xi + ai * xr};
  }
}

void gemv(std::size_t rows, std::size_t cols, const Complex* a,
          const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const Complex* row = a + r * cols;
    double re = 0.0, im = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double ar = row[c].real(), ai = row[c].imag();
      re += ar * x[c].real() - ai * x[c].imag();
      im += ar * x[c].imag() + ai * x[c].real();
    }
    y[r] = {re, im};
  }
}

void gemv_real(std::size_t rows, std::size_t cols, const double* a,
               const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = a + r * cols;
    double re = 0.0, im = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      re += row[c] * x[c].real();
      im += row[c] * x[c].imag();
    }
    y[r] = {re, im};
  }
}

void diag_mul(std::size_t n, const double* d, const Complex* x, Complex* y) {
  for (std::size_t k = 0; k < n; ++k) y[k] = {d[k] * x[k].real(), d[k] * x[k].imag()};
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", dotc,      norm2,   axpy,
                                 gemv,     gemv_real, diag_mul};
  return table;
}

}  // namespace vanqver::kernels
