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

// Singular value transformation of a block hidden in an arbitrary Hermitian
//
//   M = [[D, A^dagger], [A, D~]].
//
// With V = P_0 - P_1, (M - V M V^dagger) / 2 = [[0, A^dagger], [A, 0]] exactly,
// and e^{-iM dt/2} V e^{iM dt/2} V is a first-order step of that Hamiltonian
// built only from evolutions under +-M and V.

#ifndef QPOLAR_HSVT_HPP_
#define QPOLAR_HSVT_HPP_

#include "qpolar/embedding.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/spectral.hpp"

namespace qpolar {

class SplitHamiltonian {
 public:
  /// Throws NotHermitianError for non-Hermitian M and std::invalid_argument
  /// unless 1 <= split < M.rows().
  SplitHamiltonian(ComplexMatrix m, std::size_t split);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t split() const { return split_; }
  std::size_t right_dim() const { return split_; }
  std::size_t left_dim() const { return m_.rows() - split_; }

  ComplexMatrix d_block() const;        // n x n
  ComplexMatrix d_tilde_block() const;  // m x m
  ComplexMatrix a_block() const;        // m x n, lower left
  /// V = P_0 - P_1.
  ComplexMatrix v() const;

 private:
  ComplexMatrix m_;
  std::size_t split_;
};

/// (M - V M V^dagger) / 2 evaluated by matrix products.
ComplexMatrix conjugation_difference(const SplitHamiltonian& m);

/// Block Hamiltonian whose A is read off conjugation_difference.
BlockHamiltonian isolate_offdiagonal(const SplitHamiltonian& m);

struct TrotterReport {
  DilationVector state;
  double state_error = 0.0;     // vs e^{-i K t} psi
  double operator_error = 0.0;  // |step^n - e^{-i K t}|_2
  std::size_t steps = 1;
  double dt = 0.0;
};

/// n_steps repetitions of e^{-iM dt/2} V e^{iM dt/2} V, dt = t / n_steps,
/// applied to psi one primitive at a time.
TrotterReport trotter_offdiagonal_evolution(const SplitHamiltonian& m, double t,
                                            std::size_t n_steps, const DilationVector& psi);

/// evolve_generalized on the isolated A.
PolarApplyResult hsvt_transform(const SplitHamiltonian& m, const ParityExtension& ext,
                                double t, const DilationVector& psi, Mode mode,
                                const QpeConfig& config = {});

/// apply_polar_isometry on the isolated A.
PolarApplyResult hsvt_polar(const SplitHamiltonian& m, const DilationVector& psi, Mode mode,
                            const QpeConfig& config = {});

}  // namespace qpolar

#endif  // QPOLAR_HSVT_HPP_
