// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2+FMA kernels. A 256-bit lane holds two interleaved complex doubles
// [re0, im0, re1, im1]; odd-length tails fall through to scalar code. The
// functions carry a target attribute so the rest of the build stays baseline
// x86-64 and the dispatcher decides at runtime whether they may be called.

#include "qpolar/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define QPOLAR_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define QPOLAR_HAVE_AVX2_KERNELS 0
#endif

namespace qpolar::kernels::avx2 {

#if QPOLAR_HAVE_AVX2_KERNELS

#define QPOLAR_AVX2 __attribute__((target("avx2,fma")))

namespace {

QPOLAR_AVX2 inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

QPOLAR_AVX2 inline void store2(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

// (ar + i ai) * b for both complex lanes of b.
QPOLAR_AVX2 inline __m256d mul_broadcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d b_swap = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, b_swap));
}

// Sums the two complex lanes of v.
QPOLAR_AVX2 inline cplx reduce2(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

}  // namespace

bool compiled() { return true; }

QPOLAR_AVX2 void gemm(std::size_t m, std::size_t k, std::size_t n,
                      const cplx* a, const cplx* b, cplx* c) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = cplx(0.0, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      const cplx av = a[i * k + p];
      const __m256d ar = _mm256_set1_pd(av.real());
      const __m256d ai = _mm256_set1_pd(av.imag());
      const cplx* brow = b + p * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        store2(crow + j,
               _mm256_add_pd(load2(crow + j), mul_broadcast(ar, ai, load2(brow + j))));
      }
      if (j < n) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = cplx(crow[j].real() + (av.real() * br - av.imag() * bi),
                       crow[j].imag() + (av.real() * bi + av.imag() * br));
      }
    }
  }
}

QPOLAR_AVX2 void gemv(std::size_t m, std::size_t n, const cplx* a,
                      const cplx* x, cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* row = a + i * n;
    // acc_re collects [ar*xr, ar*xi], acc_im collects [ai*xi, ai*xr].
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < n2; j += 2) {
      const __m256d av = load2(row + j);
      const __m256d xv = load2(x + j);
      acc_re = _mm256_fmadd_pd(_mm256_movedup_pd(av), xv, acc_re);
      acc_im = _mm256_fmadd_pd(_mm256_permute_pd(av, 0b1111),
                               _mm256_permute_pd(xv, 0b0101), acc_im);
    }
    cplx s = reduce2(_mm256_addsub_pd(acc_re, acc_im));
    if (j < n) {
      const double ar = row[j].real();
      const double ai = row[j].imag();
      const double xr = x[j].real();
      const double xi = x[j].imag();
      s = cplx(s.real() + (ar * xr - ai * xi), s.imag() + (ar * xi + ai * xr));
    }
    y[i] = s;
  }
}

QPOLAR_AVX2 cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_re = _mm256_fmadd_pd(_mm256_movedup_pd(xv), yv, acc_re);
    acc_im = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0b1111),
                             _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  // conj(x) * y = [xr*yr + xi*yi, xr*yi - xi*yr]
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  cplx s = reduce2(_mm256_fmadd_pd(acc_im, sign, acc_re));
  if (i < n) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double yr = y[i].real();
    const double yi = y[i].imag();
    s = cplx(s.real() + (xr * yr + xi * yi), s.imag() + (xr * yi - xi * yr));
  }
  return s;
}

QPOLAR_AVX2 void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    store2(y + i, _mm256_add_pd(load2(y + i), mul_broadcast(ar, ai, load2(x + i))));
  }
  if (i < n) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[i].imag() + (alpha.real() * xi + alpha.imag() * xr));
  }
}

QPOLAR_AVX2 double norm_sq(std::size_t n, const cplx* x) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  const cplx s = reduce2(acc);
  double total = s.real() + s.imag();
  if (i < n) total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return total;
}

#undef QPOLAR_AVX2

#else  // !QPOLAR_HAVE_AVX2_KERNELS

bool compiled() { return false; }
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) {
  scalar::gemm(m, k, n, a, b, c);
}
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y) {
  scalar::gemv(m, n, a, x, y);
}
cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return scalar::dotc(n, x, y);
}
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  scalar::axpy(n, alpha, x, y);
}
double norm_sq(std::size_t n, const cplx* x) { return scalar::norm_sq(n, x); }

#endif

}  // namespace qpolar::kernels::avx2
