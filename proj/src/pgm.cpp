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

#include "qpolar/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "qpolar/linalg.hpp"
#include "qpolar/procrustes.hpp"

namespace qpolar {

PGMInstance::PGMInstance(std::vector<Vector> states) : states_(std::move(states)) {
  if (states_.empty()) throw std::invalid_argument("PGM instance has no states");
  const std::size_t d = states_.front().size();
  if (d == 0) throw std::invalid_argument("PGM states are empty");
  for (std::size_t j = 0; j < states_.size(); ++j) {
    if (states_[j].size() != d) {
      throw std::invalid_argument("state " + std::to_string(j) + " has dimension " +
                                  std::to_string(states_[j].size()) + ", expected " +
                                  std::to_string(d));
    }
    const double n = norm(states_[j]);
    if (!(std::abs(n - 1.0) <= kUnitTolerance)) {
      throw std::invalid_argument("state " + std::to_string(j) +
                                  " is not unit norm (|v| = " + std::to_string(n) + ")");
    }
  }
}

ComplexMatrix PGMInstance::matrix() const {
  return ComplexMatrix::from_columns(states_).adjoint();
}

ComplexMatrix PGMInstance::gram() const {
  ComplexMatrix s(dim(), dim());
  for (const auto& phi : states_) s += ComplexMatrix::outer(phi, phi);
  return s;
}

ComplexMatrix PGMInstance::span_projector() const {
  const SVDResult s = svd(matrix());
  ComplexMatrix p(dim(), dim());
  for (std::size_t j = 0; j < s.rank(); ++j) {
    const Vector r = s.right_vectors.col(j);
    p += ComplexMatrix::outer(r, r);
  }
  return p;
}

ComplexMatrix PGMInstance::mixed_on_span() const {
  ComplexMatrix p = span_projector();
  const double rank = p.trace().real();
  return p * (1.0 / std::round(rank));
}

std::vector<Vector> pgm_vectors(const PGMInstance& inst) {
  const EigenDecomposition e = hermitian_eig(inst.gram());
  const double top = e.values.empty() ? 0.0 : e.values.back();
  const ComplexMatrix inv_sqrt = hermitian_function(inst.gram(), [top](double x) {
    return x > kSupportTolerance * top ? 1.0 / std::sqrt(x) : 0.0;
  });
  std::vector<Vector> out;
  out.reserve(inst.count());
  for (const auto& phi : inst.states()) out.push_back(inv_sqrt * phi);
  return out;
}

void validate_density(const ComplexMatrix& rho, std::size_t dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("density matrix is " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + ", expected " +
                                std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!rho.all_finite()) throw std::invalid_argument("density matrix has non-finite entries");
  if (!rho.is_hermitian(1e-10)) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("density matrix trace is " +
                                std::to_string(rho.trace().real()) + ", expected 1");
  }
  if (!rho.is_positive_semidefinite(1e-10)) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

std::vector<double> pgm_probabilities(const PGMInstance& inst, const ComplexMatrix& rho) {
  validate_density(rho, inst.dim());
  std::vector<double> p;
  for (const auto& chi : pgm_vectors(inst)) p.push_back(dot(chi, rho * chi).real());
  return p;
}

Vector PGMPolarResult::reprepare(std::size_t j) const {
  if (j >= isometry.rows()) throw std::out_of_range("outcome index out of range");
  Vector v(isometry.cols());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::conj(isometry(j, k));
  return v;
}

PGMPolarResult pgm_via_polar(const PGMInstance& inst, const ComplexMatrix& rho, Mode mode,
                             const QpeConfig& config) {
  validate_density(rho, inst.dim());
  const std::size_t n = inst.count();
  const std::size_t d = inst.dim();
  std::vector<StatePair> pairs;
  for (std::size_t j = 0; j < n; ++j) pairs.push_back({inst.states()[j], basis_vector(n, j)});
  const ProcrustesInstance proc(std::move(pairs));

  PGMPolarResult out;
  out.isometry = ComplexMatrix(n, d);
  for (std::size_t i = 0; i < d; ++i) {
    const ProcrustesQuantumResult col =
        apply_procrustes_quantum(proc, basis_vector(d, i), mode, config, 0);
    out.isometry.set_col(i, col.output);
    out.min_fidelity = std::min(out.min_fidelity, col.fidelity);
  }
  const ComplexMatrix measured = out.isometry * rho * out.isometry.adjoint();
  for (std::size_t j = 0; j < n; ++j) out.probabilities.push_back(measured(j, j).real());
  return out;
}

double completeness_residual(const PGMInstance& inst) {
  ComplexMatrix sum(inst.dim(), inst.dim());
  for (const auto& chi : pgm_vectors(inst)) sum += ComplexMatrix::outer(chi, chi);
  return frobenius_distance(sum, inst.span_projector());
}

std::vector<std::uint64_t> sample_outcomes(const std::vector<double>& probabilities,
                                           std::uint64_t shots, std::uint64_t seed) {
  if (probabilities.empty()) throw std::invalid_argument("no outcomes to sample");
  std::vector<double> weights;
  for (double p : probabilities) weights.push_back(std::max(0.0, p));
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  std::vector<std::uint64_t> counts(weights.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) ++counts[dist(rng)];
  return counts;
}

}  // namespace qpolar
