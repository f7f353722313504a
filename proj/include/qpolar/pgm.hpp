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

// Pretty good measurement for pure states phi_1..phi_n in dimension d:
// chi_j = S^{-1/2} phi_j with S = sum_j |phi_j><phi_j|, the inverse square
// root taken on the support of S. Equivalently, with A the n x d matrix of
// rows <phi_j|, chi_j = U^dagger |j> for U the polar isometry of A.

#ifndef QPOLAR_PGM_HPP_
#define QPOLAR_PGM_HPP_

#include <cstdint>
#include <vector>

#include "qpolar/matrix.hpp"
#include "qpolar/spectral.hpp"

namespace qpolar {

class PGMInstance {
 public:
  /// Throws std::invalid_argument for an empty list, mixed dimensions, or a
  /// state off unit norm by more than kUnitTolerance.
  explicit PGMInstance(std::vector<Vector> states);

  std::size_t count() const { return states_.size(); }
  std::size_t dim() const { return states_.front().size(); }
  const std::vector<Vector>& states() const { return states_; }

  /// n x d, row j = <phi_j|.
  ComplexMatrix matrix() const;
  /// S = A^dagger A.
  ComplexMatrix gram() const;
  /// Orthogonal projector onto span{phi_j}, from the svd of A.
  ComplexMatrix span_projector() const;
  /// Maximally mixed state on the span.
  ComplexMatrix mixed_on_span() const;

  static constexpr double kUnitTolerance = 1e-12;

 private:
  std::vector<Vector> states_;
};

/// Eigenvalues of S at or below kSupportTolerance * lambda_max are dropped.
inline constexpr double kSupportTolerance = 1e-12;

std::vector<Vector> pgm_vectors(const PGMInstance& inst);

/// Throws std::invalid_argument unless rho is d x d, Hermitian, PSD and unit
/// trace within 1e-10.
void validate_density(const ComplexMatrix& rho, std::size_t dim);

/// p(j) = <chi_j| rho |chi_j>.
std::vector<double> pgm_probabilities(const PGMInstance& inst, const ComplexMatrix& rho);

struct PGMPolarResult {
  std::vector<double> probabilities;  // <j| U rho U^dagger |j>
  ComplexMatrix isometry;             // U, n x d, assembled column by column
  double min_fidelity = 1.0;          // worst column fidelity vs the oracle

  /// U^dagger |j>.
  Vector reprepare(std::size_t j) const;
};

/// Builds U through the Procrustes pipeline with pairs (phi_j, |j>), one
/// column per basis input, then measures in the computational basis.
PGMPolarResult pgm_via_polar(const PGMInstance& inst, const ComplexMatrix& rho, Mode mode,
                             const QpeConfig& config = {});

/// |sum_j |chi_j><chi_j| - Pi_span|_F.
double completeness_residual(const PGMInstance& inst);

/// Outcome counts from a seeded sampler; probabilities are clamped at zero.
std::vector<std::uint64_t> sample_outcomes(const std::vector<double>& probabilities,
                                           std::uint64_t shots, std::uint64_t seed);

}  // namespace qpolar

#endif  // QPOLAR_PGM_HPP_
