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

// Hermitian dilation H = [[0, A^dagger], [A, 0]] of an m x n matrix A.
//
// Index ordering is part of the wire format: indices 0..n-1 belong to the
// right space H_R (where A's right singular vectors live) and n..n+m-1 to the
// left space H_L. A vector on the dilation is written (top, bottom) =
// (H_R part, H_L part), so eigenvectors read (r_j, +-l_j) / sqrt(2).

#ifndef QPOLAR_EMBEDDING_HPP_
#define QPOLAR_EMBEDDING_HPP_

#include <utility>
#include <vector>

#include "qpolar/matrix.hpp"

namespace qpolar {

class BlockHamiltonian {
 public:
  explicit BlockHamiltonian(ComplexMatrix a);

  const ComplexMatrix& a_block() const { return a_; }
  std::size_t right_dim() const { return a_.cols(); }
  std::size_t left_dim() const { return a_.rows(); }
  std::size_t dim() const { return a_.rows() + a_.cols(); }
  /// Exactly Hermitian full matrix on H_R (+) H_L.
  const ComplexMatrix& matrix() const { return full_; }

 private:
  ComplexMatrix a_;
  ComplexMatrix full_;
};

struct DilationVector {
  Vector top;     // H_R component, length n
  Vector bottom;  // H_L component, length m

  std::size_t dim() const { return top.size() + bottom.size(); }
  double norm_sq() const;
  double norm() const;
  /// (top, bottom) concatenated.
  Vector flatten() const;
  static DilationVector unflatten(std::span<const cplx> v, std::size_t right_dim);
};

BlockHamiltonian embed(const ComplexMatrix& a);

struct EigenPair {
  double sigma;               // singular value; eigenvalues are +sigma, -sigma
  DilationVector plus;        // (r, l) / sqrt(2)
  DilationVector minus;       // (r, -l) / sqrt(2)
};

struct DilationSpectrum {
  std::vector<EigenPair> pairs;           // sigma descending
  std::vector<DilationVector> kernel;     // eigenvalue-0 basis
};

/// Eigenvalue +-sigma pairs and the kernel of the dilation, read off a
/// Hermitian eigendecomposition of the full matrix. Eigenvalues with
/// |lambda| <= kRankTolerance * |H|_2 belong to the kernel.
DilationSpectrum eigenstructure(const BlockHamiltonian& h);

/// (psi, 0); psi lives in H_R of a dilation whose H_L has dimension left_dim.
DilationVector inject_right(std::span<const cplx> psi, std::size_t left_dim);
/// (0, psi); psi lives in H_L.
DilationVector inject_left(std::size_t right_dim, std::span<const cplx> psi);
/// Checked forms: throw std::invalid_argument when psi does not match the
/// corresponding block of h.
DilationVector inject_right(const BlockHamiltonian& h, std::span<const cplx> psi);
DilationVector inject_left(const BlockHamiltonian& h, std::span<const cplx> psi);
std::pair<Vector, Vector> project_blocks(const DilationVector& v);

/// Block-swap operator [[0, U^dagger], [U, 0]] for an m x n matrix U.
ComplexMatrix block_swap(const ComplexMatrix& u);

}  // namespace qpolar

#endif  // QPOLAR_EMBEDDING_HPP_
