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

#ifndef QPOLAR_KERNELS_HPP_
#define QPOLAR_KERNELS_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qpolar::kernels {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Raw complex-double kernels. All matrices are dense row-major and may not
/// alias their outputs.
struct KernelTable {
  /// c[m x n] = a[m x k] * b[k x n]
  void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
               const cplx* b, cplx* c);
  /// y[m] = a[m x n] * x[n]
  void (*gemv)(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
               cplx* y);
  /// sum_i conj(x_i) * y_i
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  /// y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// sum_i |x_i|^2
  double (*norm_sq)(std::size_t n, const cplx* x);
};

bool isa_available(Isa isa);

/// Table for a specific instruction set. Throws std::invalid_argument when the
/// running CPU lacks it.
const KernelTable& table(Isa isa);

/// The table selected once per process: the widest available ISA, unless the
/// QPOLAR_KERNELS environment variable is set to "scalar".
const KernelTable& active();
Isa active_isa();

// Span front ends over the active table.
void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const cplx> a,
          std::span<const cplx> b, std::span<cplx> c);
void gemv(std::size_t m, std::size_t n, std::span<const cplx> a,
          std::span<const cplx> x, std::span<cplx> y);
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double norm_sq(std::span<const cplx> x);

namespace scalar {
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c);
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double norm_sq(std::size_t n, const cplx* x);
}  // namespace scalar

namespace avx2 {
bool compiled();
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c);
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double norm_sq(std::size_t n, const cplx* x);
}  // namespace avx2

}  // namespace qpolar::kernels

#endif  // QPOLAR_KERNELS_HPP_
