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

// Reference kernels. Complex products are spelled out in real arithmetic so
// that the result does not depend on how the standard library implements
// operator* for std::complex (NaN/Inf recovery paths).

#include "qpolar/kernels.hpp"

namespace qpolar::kernels::scalar {

namespace {

inline void mul_acc(double ar, double ai, double br, double bi, double& cr,
                    double& ci) {
  cr += ar * br - ai * bi;
  ci += ar * bi + ai * br;
}

}  // namespace

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real();
      const double ai = a[i * k + p].imag();
      const cplx* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        double cr = crow[j].real();
        double ci = crow[j].imag();
        mul_acc(ar, ai, brow[j].real(), brow[j].imag(), cr, ci);
        crow[j] = cplx(cr, ci);
      }
    }
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < m; ++i) {
    double sr = 0.0;
    double si = 0.0;
    const cplx* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      mul_acc(row[j].real(), row[j].imag(), x[j].real(), x[j].imag(), sr, si);
    }
    y[i] = cplx(sr, si);
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mul_acc(x[i].real(), -x[i].imag(), y[i].real(), y[i].imag(), sr, si);
  }
  return {sr, si};
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double yr = y[i].real();
    double yi = y[i].imag();
    mul_acc(ar, ai, x[i].real(), x[i].imag(), yr, yi);
    y[i] = cplx(yr, yi);
  }
}

double norm_sq(std::size_t n, const cplx* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

}  // namespace qpolar::kernels::scalar
