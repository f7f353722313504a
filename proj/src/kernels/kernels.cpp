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

#include "qpolar/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qpolar::kernels {

namespace {

constexpr KernelTable kScalarTable{scalar::gemm, scalar::gemv, scalar::dotc,
                                   scalar::axpy, scalar::norm_sq};
constexpr KernelTable kAvx2Table{avx2::gemm, avx2::gemv, avx2::dotc,
                                 avx2::axpy, avx2::norm_sq};

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa select_isa() {
  if (const char* env = std::getenv("QPOLAR_KERNELS")) {
    if (std::string(env) == "scalar") return Isa::kScalar;
  }
  return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

void require_size(std::size_t have, std::size_t need, const char* what) {
  if (have < need) {
    throw std::invalid_argument(std::string("kernel operand too small: ") + what);
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2: {
      static const bool ok = avx2::compiled() && cpu_has_avx2();
      return ok;
    }
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("instruction set not available: " +
                                std::string(isa_name(isa)));
  }
  return isa == Isa::kAvx2 ? kAvx2Table : kScalarTable;
}

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active() { return table(active_isa()); }

void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const cplx> a,
          std::span<const cplx> b, std::span<cplx> c) {
  require_size(a.size(), m * k, "gemm a");
  require_size(b.size(), k * n, "gemm b");
  require_size(c.size(), m * n, "gemm c");
  active().gemm(m, k, n, a.data(), b.data(), c.data());
}

void gemv(std::size_t m, std::size_t n, std::span<const cplx> a,
          std::span<const cplx> x, std::span<cplx> y) {
  require_size(a.size(), m * n, "gemv a");
  require_size(x.size(), n, "gemv x");
  require_size(y.size(), m, "gemv y");
  active().gemv(m, n, a.data(), x.data(), y.data());
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  require_size(y.size(), x.size(), "dotc y");
  return active().dotc(x.size(), x.data(), y.data());
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  require_size(y.size(), x.size(), "axpy y");
  active().axpy(x.size(), alpha, x.data(), y.data());
}

double norm_sq(std::span<const cplx> x) {
  return active().norm_sq(x.size(), x.data());
}

}  // namespace qpolar::kernels
