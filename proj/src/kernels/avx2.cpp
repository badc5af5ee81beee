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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "vanqver/kernels.hpp"

namespace vanqver::kernels {
namespace {

inline const double* as_doubles(const Complex* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }

// Lanes of a 256-bit register: [re0, im0, re1, im1].
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// (re0 + re1, im0 + im1)
inline Complex fold_pairs(__m256d v) {
  __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  const double* xd = as_doubles(x);
  const double* yd = as_doubles(y);
  __m256d same = _mm256_setzero_pd();   // xr*yr, xi*yi
  __m256d cross = _mm256_setzero_pd();  // xi*yr, xr*yi
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, cross);
  }
  alignas(32) double c[4];
  _mm256_store_pd(c, cross);
  double re = hsum(same);
  double im = (c[1] - c[0]) + (c[3] - c[2]);
  for (; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

double norm2(std::size_t n, const Complex* x) {
  const double* xd = as_doubles(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a = _mm256_loadu_pd(xd + 2 * k);
    const __m256d b = _mm256_loadu_pd(xd + 2 * k + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) total += std::norm(x[k]);
  return total;
}

void axpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    // [ar*xr - ai*xi, ar*xi + ai*xr]
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(ar, xv), _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * k), prod));
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

void gemv(std::size_t rows, std::size_t cols, const Complex* a,
          const Complex* x, Complex* y) {
  const double* xd = as_doubles(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = as_doubles(a + r * cols);
    __m256d acc_re = _mm256_setzero_pd();  // ar * [xr, xi]
    __m256d acc_im = _mm256_setzero_pd();  // ai * [xi, xr]
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      const __m256d av = _mm256_loadu_pd(row + 2 * c);
      const __m256d xv = _mm256_loadu_pd(xd + 2 * c);
      acc_re = _mm256_fmadd_pd(_mm256_movedup_pd(av), xv, acc_re);
      acc_im = _mm256_fmadd_pd(_mm256_permute_pd(av, 0xF),
                               _mm256_permute_pd(xv, 0x5), acc_im);
    }
    Complex sum = fold_pairs(_mm256_addsub_pd(acc_re, acc_im));
    for (; c < cols; ++c) sum += a[r * cols + c] * x[c];
    y[r] = sum;
  }
}

void gemv_real(std::size_t rows, std::size_t cols, const double* a,
               const Complex* x, Complex* y) {
  const double* xd = as_doubles(x);
  std::size_t r = 0;
  // Two rows per pass share every x load.
  for (; r + 2 <= rows; r += 2) {
    const double* row0 = a + r * cols;
    const double* row1 = row0 + cols;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      const __m256d xv = _mm256_loadu_pd(xd + 2 * c);
      const __m256d a0 = _mm256_permute4x64_pd(
          _mm256_castpd128_pd256(_mm_loadu_pd(row0 + c)), 0b01010000);
      const __m256d a1 = _mm256_permute4x64_pd(
          _mm256_castpd128_pd256(_mm_loadu_pd(row1 + c)), 0b01010000);
      acc0 = _mm256_fmadd_pd(a0, xv, acc0);
      acc1 = _mm256_fmadd_pd(a1, xv, acc1);
    }
    Complex s0 = fold_pairs(acc0);
    Complex s1 = fold_pairs(acc1);
    for (; c < cols; ++c) {
      s0 += row0[c] * x[c];
      s1 += row1[c] * x[c];
    }
    y[r] = s0;
    y[r + 1] = s1;
  }
  for (; r < rows; ++r) {
    const double* row = a + r * cols;
    Complex s{};
    for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

void diag_mul(std::size_t n, const double* d, const Complex* x, Complex* y) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d dv = _mm256_permute4x64_pd(
        _mm256_castpd128_pd256(_mm_loadu_pd(d + k)), 0b01010000);
    _mm256_storeu_pd(yd + 2 * k, _mm256_mul_pd(dv, _mm256_loadu_pd(xd + 2 * k)));
  }
  for (; k < n; ++k) y[k] = d[k] * x[k];
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2", dotc,      norm2,   axpy,
                                 gemv,   gemv_real, diag_mul};
  return table;
}

}  // namespace vanqver::kernels
