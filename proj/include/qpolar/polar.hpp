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

// Polar-decomposition operations driven by the dilation H = [[0, A^dagger],
// [A, 0]]:
//
//   sign(H)           = [[0, U^dagger], [U, 0]]      on the support of H
//   e^{-i |H| t}      = e^{-iBt} (+) e^{-iB~t}
//   e^{-i g(H) t}     for a parity extension g of a function on sigma >= 0
//
// A is rescaled internally so that sigma_max = 1 (the QPE bound Lambda then
// applies uniformly); times are rescaled to match and the factor is reported.
// On the kernel of H (present for non-square or rank-deficient A) the sign
// route acts as the identity, or raises the flag when kappa_tilde is set.

#ifndef QPOLAR_POLAR_HPP_
#define QPOLAR_POLAR_HPP_

#include <functional>
#include <string>

#include "qpolar/embedding.hpp"
#include "qpolar/spectral.hpp"

namespace qpolar {

struct PolarApplyResult {
  DilationVector output;   // flag = 0 branch
  DilationVector flagged;  // flag = 1 branch (zero without kappa_tilde)
  SimDiagnostics diagnostics;
  Mode mode = Mode::kExact;
  double scale = 1.0;           // sigma_max(A) divided out
  double kappa = 1.0;           // sigma_max / sigma_min over nonzero sigma
  unsigned bits_required = 1;   // ceil(log2(4 Lambda kappa))
  bool resolvable = true;       // qpe mode: bits >= bits_required
};

enum class Parity { kOdd, kEven };

std::string_view parity_name(Parity parity);

/// Extension g of a function f on sigma >= 0 to the whole real line:
/// odd g(-s) = -f(s) with g(0) = 0, even g(-s) = f(s).
struct ParityExtension {
  std::function<double(double)> base_function;
  Parity parity = Parity::kOdd;
  std::string label = "f";

  double operator()(double x) const;
};

PolarApplyResult apply_polar_isometry(const ComplexMatrix& a, const DilationVector& psi,
                                      Mode mode, const QpeConfig& config = {});

PolarApplyResult apply_polar_wellconditioned(const ComplexMatrix& a,
                                             const DilationVector& psi, double kappa_tilde,
                                             Mode mode, const QpeConfig& config = {});

PolarApplyResult evolve_positive_factor(const ComplexMatrix& a, double t,
                                        const DilationVector& psi, Mode mode,
                                        const QpeConfig& config = {});

PolarApplyResult evolve_generalized(const ComplexMatrix& a, const ParityExtension& ext,
                                    double t, const DilationVector& psi, Mode mode,
                                    const QpeConfig& config = {});

/// Direct construction from svd(A): odd parity gives the block Hamiltonian of
/// f(A) = sum_j f(sigma_j) l_j r_j^dagger, even parity gives
/// f(sqrt(A^dagger A)) (+) f(sqrt(A A^dagger)).
ComplexMatrix parity_hamiltonian(const ComplexMatrix& a, const ParityExtension& ext);

}  // namespace qpolar

#endif  // QPOLAR_POLAR_HPP_
