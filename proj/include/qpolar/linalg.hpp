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

// Classical oracle: dense SVD, polar factors, Hermitian eigendecomposition
// and matrix exponentials. Every quantum-simulation routine in the project is
// checked against these.
//
// Phase convention (global): every singular/eigen vector is scaled so that
// its largest-magnitude entry is real and positive, ties going to the lowest
// index. For SVD the convention is fixed on the right vector and the left
// vector receives the same phase, so sum_j s_j l_j r_j^dagger is unchanged.

#ifndef QPOLAR_LINALG_HPP_
#define QPOLAR_LINALG_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpolar/matrix.hpp"

namespace qpolar {

/// Singular values below kRankTolerance * sigma_max are treated as zero.
inline constexpr double kRankTolerance = 1e-12;

/// Hermiticity check used by hermitian_eig: defect <= tol * max(1, |H|_F).
inline constexpr double kHermitianTolerance = 1e-10;

class NotHermitianError : public std::invalid_argument {
 public:
  explicit NotHermitianError(double asymmetry)
      : std::invalid_argument("matrix is not Hermitian: |H - H^dagger|_F = " +
                              std::to_string(asymmetry)),
        asymmetry_(asymmetry) {}
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

struct SVDResult {
  ComplexMatrix left_vectors;          // m x k, columns l_j
  std::vector<double> singular_values;  // k values, descending
  ComplexMatrix right_vectors;         // n x k, columns r_j

  ComplexMatrix reconstruct() const;
  /// Number of singular values above kRankTolerance * sigma_max.
  std::size_t rank() const;
};

struct PolarFactors {
  ComplexMatrix isometry;        // U, m x n
  ComplexMatrix right_positive;  // B = (A^dagger A)^{1/2}, n x n
  ComplexMatrix left_positive;   // B~ = (A A^dagger)^{1/2}, m x m
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are orthonormal eigenvectors

  ComplexMatrix reconstruct() const;
};

/// Thin SVD with k = min(m, n) triplets via one-sided (Hestenes) Jacobi.
/// Throws std::invalid_argument for empty or non-finite input.
SVDResult svd(const ComplexMatrix& a);

/// U = sum over nonzero sigma_j of l_j r_j^dagger, B, B~. Rank-deficient A
/// gives a partial isometry.
PolarFactors classical_polar(const ComplexMatrix& a);

/// Cyclic complex Jacobi. Throws NotHermitianError carrying the measured
/// asymmetry when H is not Hermitian within tol * max(1, |H|_F).
EigenDecomposition hermitian_eig(const ComplexMatrix& h,
                                 double tol = kHermitianTolerance);

/// e^{-iHt} via hermitian_eig.
ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t);

/// sum_j f(lambda_j) v_j v_j^dagger.
ComplexMatrix hermitian_function(const ComplexMatrix& h,
                                 const std::function<double(double)>& f);

/// (H^dagger H)^{1/2} = sum_j |lambda_j| v_j v_j^dagger: the positive
/// semidefinite matrix nearest to H in Frobenius norm.
ComplexMatrix closest_positive(const ComplexMatrix& h);

/// |A - B|_F. Throws std::invalid_argument on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest singular value; 0 for the zero matrix.
double spectral_norm(const ComplexMatrix& a);

/// General matrix exponential e^X by scaling and squaring of a Taylor
/// series. Does not go through any eigendecomposition, so it serves as an
/// independent route to unitaries that the oracle also computes.
ComplexMatrix expm(const ComplexMatrix& x);

/// M^k by binary powering; M^0 = I.
ComplexMatrix matrix_power(const ComplexMatrix& m, std::uint64_t k);

/// Applies the global phase convention in place and returns the unit phase
/// that was divided out.
cplx fix_phase(std::span<cplx> v);

}  // namespace qpolar

#endif  // QPOLAR_LINALG_HPP_
