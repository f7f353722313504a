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

#include "qpolar/hsvt.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qpolar/linalg.hpp"
#include "qpolar/procrustes.hpp"

namespace qpolar {

SplitHamiltonian::SplitHamiltonian(ComplexMatrix m, std::size_t split)
    : m_(std::move(m)), split_(split) {
  if (!m_.is_square()) throw std::invalid_argument("split Hamiltonian is not square");
  if (split_ == 0 || split_ >= m_.rows()) {
    throw std::invalid_argument("split " + std::to_string(split_) +
                                " must lie in [1, " + std::to_string(m_.rows()) + ")");
  }
  const double defect = m_.hermitian_defect();
  if (defect > kHermitianTolerance * std::max(1.0, m_.frobenius_norm())) {
    throw NotHermitianError(defect);
  }
}

ComplexMatrix SplitHamiltonian::d_block() const { return m_.block(0, 0, split_, split_); }

ComplexMatrix SplitHamiltonian::d_tilde_block() const {
  return m_.block(split_, split_, left_dim(), left_dim());
}

ComplexMatrix SplitHamiltonian::a_block() const {
  return m_.block(split_, 0, left_dim(), split_);
}

ComplexMatrix SplitHamiltonian::v() const { return block_sign(split_, left_dim()); }

ComplexMatrix conjugation_difference(const SplitHamiltonian& m) {
  const ComplexMatrix v = m.v();
  return (m.matrix() - v * m.matrix() * v.adjoint()) * 0.5;
}

BlockHamiltonian isolate_offdiagonal(const SplitHamiltonian& m) {
  return BlockHamiltonian(
      conjugation_difference(m).block(m.split(), 0, m.left_dim(), m.right_dim()));
}

TrotterReport trotter_offdiagonal_evolution(const SplitHamiltonian& m, double t,
                                            std::size_t n_steps, const DilationVector& psi) {
  if (n_steps == 0) throw std::invalid_argument("n_steps must be at least 1");
  if (psi.top.size() != m.right_dim() || psi.bottom.size() != m.left_dim()) {
    throw std::invalid_argument("state does not match the split");
  }
  const double dt = t / static_cast<double>(n_steps);
  const ComplexMatrix backward = matrix_exp_hermitian(m.matrix(), dt / 2.0);  // e^{-iM dt/2}
  const ComplexMatrix forward = backward.adjoint();                          // e^{+iM dt/2}
  const ComplexMatrix v = m.v();

  Vector state = psi.flatten();
  for (std::size_t k = 0; k < n_steps; ++k) {
    state = v * state;
    state = forward * state;
    state = v * state;
    state = backward * state;
  }

  const ComplexMatrix exact = matrix_exp_hermitian(isolate_offdiagonal(m).matrix(), t);
  const ComplexMatrix step = backward * v * forward * v;
  TrotterReport report;
  report.state_error = distance(state, exact * psi.flatten());
  report.operator_error = spectral_norm(matrix_power(step, n_steps) - exact);
  report.state = DilationVector::unflatten(state, m.right_dim());
  report.steps = n_steps;
  report.dt = dt;
  return report;
}

PolarApplyResult hsvt_transform(const SplitHamiltonian& m, const ParityExtension& ext,
                                double t, const DilationVector& psi, Mode mode,
                                const QpeConfig& config) {
  return evolve_generalized(isolate_offdiagonal(m).a_block(), ext, t, psi, mode, config);
}

PolarApplyResult hsvt_polar(const SplitHamiltonian& m, const DilationVector& psi, Mode mode,
                            const QpeConfig& config) {
  return apply_polar_isometry(isolate_offdiagonal(m).a_block(), psi, mode, config);
}

}  // namespace qpolar
