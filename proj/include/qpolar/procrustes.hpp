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

// Unitary Procrustes problem: given pairs (phi_j, psi_j), find the unitary U
// minimizing |UF - G|_F^2. The classical answer is the polar factor of
// A = G F^dagger. The quantum route prepares
//
//   |Psi> = (2r)^{-1/2} sum_j |j> (x) (phi_j (+) psi_j),
//
// traces out the index register to get rho, forms rho~ = V rho V^dagger with
// V = P_0 - P_1, and uses
//
//   e^{i dt rho~} e^{-i dt rho} = e^{-i dt [[0, A^dagger], [A, 0]] / r} + O(dt^2)
//
// as the Hamiltonian resource for the polar isometry.

#ifndef QPOLAR_PROCRUSTES_HPP_
#define QPOLAR_PROCRUSTES_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "qpolar/embedding.hpp"
#include "qpolar/matrix.hpp"
#include "qpolar/spectral.hpp"

namespace qpolar {

struct StatePair {
  Vector phi;  // input, dimension n
  Vector psi;  // output, dimension m
};

class ProcrustesInstance {
 public:
  /// Throws std::invalid_argument when pairs is empty, dimensions disagree,
  /// or a vector is not unit norm within kUnitTolerance.
  explicit ProcrustesInstance(std::vector<StatePair> pairs);

  std::size_t size() const { return pairs_.size(); }
  std::size_t input_dim() const { return pairs_.front().phi.size(); }
  std::size_t output_dim() const { return pairs_.front().psi.size(); }
  const std::vector<StatePair>& pairs() const { return pairs_; }

  /// F: n x r, columns phi_j.
  ComplexMatrix inputs() const;
  /// G: m x r, columns psi_j.
  ComplexMatrix outputs() const;
  /// A = G F^dagger.
  ComplexMatrix target() const;

  static constexpr double kUnitTolerance = 1e-12;

 private:
  std::vector<StatePair> pairs_;
};

/// Index-major statevector: amplitude of |j>|k> at j * (n + m) + k.
Vector build_pair_state(const ProcrustesInstance& inst);

struct DensityPair {
  ComplexMatrix rho;
  ComplexMatrix rho_conjugated;
  std::size_t split = 0;  // n
  std::size_t pairs = 1;  // r

  ComplexMatrix c_block() const;        // n x n
  ComplexMatrix c_tilde_block() const;  // m x m
  ComplexMatrix offdiagonal_block() const;  // m x n, equals A / (2r)
};

/// diag(+1 (n times), -1 (m times)).
ComplexMatrix block_sign(std::size_t n, std::size_t m);

/// Partial trace over the index register of build_pair_state.
DensityPair reduced_density(const ProcrustesInstance& inst);

/// e^{i dt rho~} e^{-i dt rho}.
ComplexMatrix dme_step(const DensityPair& pair, double dt);

/// tr_1[e^{-iS dt} (rho (x) sigma) e^{iS dt}], S the swap, computed in the
/// doubled space. Throws std::invalid_argument on shape mismatch.
ComplexMatrix partial_swap_channel(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                   double dt);

struct EvolutionReport {
  Vector state;
  double operator_error = 0.0;  // |product - e^{-i embed(A) t}|_2
  double state_error = 0.0;     // |product psi - exact psi|
  std::size_t steps = 1;
  double step_dt = 0.0;         // t r / n_steps
};

/// dme_step(t r / n_steps)^n_steps, the product targeting e^{-i embed(A) t}.
ComplexMatrix effective_evolution_unitary(const ProcrustesInstance& inst, double t,
                                          std::size_t n_steps);

EvolutionReport effective_hamiltonian_evolution(const ProcrustesInstance& inst, double t,
                                                std::size_t n_steps,
                                                const DilationVector& psi);

struct ProcrustesSolution {
  ComplexMatrix unitary;
  double residual = 0.0;
};

/// |QF - G|_F^2.
double procrustes_residual(const ProcrustesInstance& inst, const ComplexMatrix& q);

ProcrustesSolution solve_procrustes_classical(const ProcrustesInstance& inst);

/// sum_j eps_j l_j r_j^dagger with eps = -1 at the listed indices (into the
/// sigma-descending svd of A) and +1 elsewhere; another stationary point of
/// the constrained residual.
ComplexMatrix procrustes_stationary_point(const ProcrustesInstance& inst,
                                          const std::vector<std::size_t>& flipped);

struct ProcrustesQuantumResult {
  Vector output;      // H_1 part of the flag = 0 branch
  Vector residue;     // H_0 part left behind (kernel of A)
  SimDiagnostics diagnostics;
  double fidelity = 1.0;          // |<U chi | output>| / |U chi|
  double trotter_error = 0.0;     // operator error of the Trotterized W
};

/// Applies the Procrustes unitary to chi in H_0. exact mode runs the exact
/// sign transform on embed(A). qpe mode runs phase estimation with
/// W = e^{2 pi i H' / (4 Lambda)}, H' = embed(A) / sigma_max: built from the
/// dme_step product when n_steps >= 1, from the exact exponential when
/// n_steps == 0. config.kappa_tilde selects the flagged variant.
ProcrustesQuantumResult apply_procrustes_quantum(const ProcrustesInstance& inst,
                                                 std::span<const cplx> chi, Mode mode,
                                                 const QpeConfig& config,
                                                 std::size_t n_steps);

}  // namespace qpolar

#endif  // QPOLAR_PROCRUSTES_HPP_
