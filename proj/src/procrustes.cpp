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

#include "qpolar/procrustes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qpolar/linalg.hpp"
#include "qpolar/polar.hpp"

namespace qpolar {

namespace {

void require_unit(std::span<const cplx> v, const char* what, std::size_t j) {
  const double n = norm(v);
  if (!(std::abs(n - 1.0) <= ProcrustesInstance::kUnitTolerance)) {
    throw std::invalid_argument(std::string(what) + " " + std::to_string(j) +
                                " is not unit norm (|v| = " + std::to_string(n) + ")");
  }
}

}  // namespace

ProcrustesInstance::ProcrustesInstance(std::vector<StatePair> pairs)
    : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw std::invalid_argument("Procrustes instance has no pairs");
  const std::size_t n = pairs_.front().phi.size();
  const std::size_t m = pairs_.front().psi.size();
  if (n == 0 || m == 0) throw std::invalid_argument("Procrustes vectors are empty");
  for (std::size_t j = 0; j < pairs_.size(); ++j) {
    if (pairs_[j].phi.size() != n || pairs_[j].psi.size() != m) {
      throw std::invalid_argument("pair " + std::to_string(j) + " has dimensions (" +
                                  std::to_string(pairs_[j].phi.size()) + ", " +
                                  std::to_string(pairs_[j].psi.size()) + "), expected (" +
                                  std::to_string(n) + ", " + std::to_string(m) + ")");
    }
    require_unit(pairs_[j].phi, "input", j);
    require_unit(pairs_[j].psi, "output", j);
  }
}

ComplexMatrix ProcrustesInstance::inputs() const {
  std::vector<Vector> cols;
  for (const auto& p : pairs_) cols.push_back(p.phi);
  return ComplexMatrix::from_columns(cols);
}

ComplexMatrix ProcrustesInstance::outputs() const {
  std::vector<Vector> cols;
  for (const auto& p : pairs_) cols.push_back(p.psi);
  return ComplexMatrix::from_columns(cols);
}

ComplexMatrix ProcrustesInstance::target() const { return outputs() * inputs().adjoint(); }

Vector build_pair_state(const ProcrustesInstance& inst) {
  const std::size_t n = inst.input_dim();
  const std::size_t d = n + inst.output_dim();
  const double amp = 1.0 / std::sqrt(2.0 * static_cast<double>(inst.size()));
  Vector state(inst.size() * d);
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const StatePair& p = inst.pairs()[j];
    for (std::size_t k = 0; k < n; ++k) state[j * d + k] = amp * p.phi[k];
    for (std::size_t k = 0; k < p.psi.size(); ++k) state[j * d + n + k] = amp * p.psi[k];
  }
  return state;
}

ComplexMatrix DensityPair::c_block() const { return rho.block(0, 0, split, split); }

ComplexMatrix DensityPair::c_tilde_block() const {
  const std::size_t m = rho.rows() - split;
  return rho.block(split, split, m, m);
}

ComplexMatrix DensityPair::offdiagonal_block() const {
  return rho.block(split, 0, rho.rows() - split, split);
}

ComplexMatrix block_sign(std::size_t n, std::size_t m) {
  std::vector<double> d(n + m, 1.0);
  for (std::size_t i = n; i < n + m; ++i) d[i] = -1.0;
  return ComplexMatrix::diagonal(std::span<const double>(d));
}

DensityPair reduced_density(const ProcrustesInstance& inst) {
  const std::size_t n = inst.input_dim();
  const std::size_t d = n + inst.output_dim();
  const Vector state = build_pair_state(inst);
  DensityPair out;
  out.split = n;
  out.pairs = inst.size();
  out.rho = ComplexMatrix(d, d);
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const std::span<const cplx> slice(state.data() + j * d, d);
    out.rho += ComplexMatrix::outer(slice, slice);
  }
  const ComplexMatrix v = block_sign(n, inst.output_dim());
  out.rho_conjugated = v * out.rho * v.adjoint();
  return out;
}

ComplexMatrix dme_step(const DensityPair& pair, double dt) {
  return matrix_exp_hermitian(pair.rho_conjugated, -dt) * matrix_exp_hermitian(pair.rho, dt);
}

ComplexMatrix partial_swap_channel(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                   double dt) {
  if (!rho.is_square() || !sigma.is_square() || rho.rows() != sigma.rows()) {
    throw std::invalid_argument("partial_swap_channel: shapes " + std::to_string(rho.rows()) +
                                "x" + std::to_string(rho.cols()) + " and " +
                                std::to_string(sigma.rows()) + "x" +
                                std::to_string(sigma.cols()) + " do not match");
  }
  const std::size_t d = rho.rows();
  ComplexMatrix swap(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) swap(b * d + a, a * d + b) = 1.0;
  }
  const ComplexMatrix u = matrix_exp_hermitian(swap, dt);
  const ComplexMatrix joint = u * kron(rho, sigma) * u.adjoint();
  ComplexMatrix out(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) out(i, j) += joint(a * d + i, a * d + j);
    }
  }
  return out;
}

ComplexMatrix effective_evolution_unitary(const ProcrustesInstance& inst, double t,
                                          std::size_t n_steps) {
  if (n_steps == 0) throw std::invalid_argument("n_steps must be at least 1");
  const double dt = t * static_cast<double>(inst.size()) / static_cast<double>(n_steps);
  return matrix_power(dme_step(reduced_density(inst), dt), n_steps);
}

EvolutionReport effective_hamiltonian_evolution(const ProcrustesInstance& inst, double t,
                                                std::size_t n_steps,
                                                const DilationVector& psi) {
  if (psi.top.size() != inst.input_dim() || psi.bottom.size() != inst.output_dim()) {
    throw std::invalid_argument("state does not match the instance dimensions");
  }
  const ComplexMatrix product = effective_evolution_unitary(inst, t, n_steps);
  const ComplexMatrix exact = matrix_exp_hermitian(embed(inst.target()).matrix(), t);
  const Vector v = psi.flatten();
  EvolutionReport report;
  report.state = product * v;
  report.operator_error = spectral_norm(product - exact);
  report.state_error = distance(report.state, exact * v);
  report.steps = n_steps;
  report.step_dt = t * static_cast<double>(inst.size()) / static_cast<double>(n_steps);
  return report;
}

double procrustes_residual(const ProcrustesInstance& inst, const ComplexMatrix& q) {
  const double d = frobenius_distance(q * inst.inputs(), inst.outputs());
  return d * d;
}

ProcrustesSolution solve_procrustes_classical(const ProcrustesInstance& inst) {
  ProcrustesSolution out;
  out.unitary = classical_polar(inst.target()).isometry;
  out.residual = procrustes_residual(inst, out.unitary);
  return out;
}

ComplexMatrix procrustes_stationary_point(const ProcrustesInstance& inst,
                                          const std::vector<std::size_t>& flipped) {
  const SVDResult s = svd(inst.target());
  const std::size_t rank = s.rank();
  ComplexMatrix u(inst.output_dim(), inst.input_dim());
  for (std::size_t j = 0; j < rank; ++j) {
    double sign = 1.0;
    for (std::size_t f : flipped) {
      if (f >= rank) throw std::invalid_argument("flipped index past the rank of A");
      if (f == j) sign = -sign;
    }
    u += sign * ComplexMatrix::outer(s.left_vectors.col(j), s.right_vectors.col(j));
  }
  return u;
}

ProcrustesQuantumResult apply_procrustes_quantum(const ProcrustesInstance& inst,
                                                 std::span<const cplx> chi, Mode mode,
                                                 const QpeConfig& config,
                                                 std::size_t n_steps) {
  if (chi.size() != inst.input_dim()) {
    throw std::invalid_argument("chi has dimension " + std::to_string(chi.size()) +
                                ", instance input dimension is " +
                                std::to_string(inst.input_dim()));
  }
  if (!(std::abs(norm(chi) - 1.0) <= 1e-10)) throw std::invalid_argument("chi is not unit norm");
  const ComplexMatrix a = inst.target();
  const DilationVector psi = inject_right(chi, inst.output_dim());

  ProcrustesQuantumResult out;
  if (mode == Mode::kExact || n_steps == 0) {
    const PolarApplyResult res =
        config.kappa_tilde ? apply_polar_wellconditioned(a, psi, *config.kappa_tilde, mode, config)
                           : apply_polar_isometry(a, psi, mode, config);
    out.output = res.output.bottom;
    out.residue = res.output.top;
    out.diagnostics = res.diagnostics;
  } else {
    config.validate();
    double s = spectral_norm(a);
    if (s == 0.0) s = 1.0;
    const ComplexMatrix h = embed(a * (1.0 / s)).matrix();
    const double phase_scale = 2.0 * std::numbers::pi / (4.0 * config.eigenvalue_bound);
    // W = e^{i phase_scale H} = e^{-i tau embed(A)} with tau = -phase_scale / s.
    const ComplexMatrix w = effective_evolution_unitary(inst, -phase_scale / s, n_steps);
    out.trotter_error = spectral_norm(w - expm(h * cplx(0.0, phase_scale)));
    const SpectralOutput res =
        spectral_transform_qpe(QpeUnitary::from_unitary(w, config.bits), h,
                               SpectralFunction::sign_phase(config.kappa_tilde),
                               psi.flatten(), config);
    const DilationVector clear = DilationVector::unflatten(res.state.clear, inst.input_dim());
    out.output = clear.bottom;
    out.residue = clear.top;
    out.diagnostics = res.diagnostics;
  }

  const Vector expected = solve_procrustes_classical(inst).unitary * chi;
  const double weight = norm(expected);
  out.fidelity = weight > 0.0 ? overlap(expected, out.output) / (weight * weight)
                              : (norm(out.output) == 0.0 ? 1.0 : 0.0);
  return out;
}

}  // namespace qpolar
