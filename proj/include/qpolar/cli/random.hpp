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

// Seeded random instances. Gaussian samples are drawn by Box-Muller from
// the raw 64-bit output of std::mt19937_64 (fully specified by the standard),
// so a seed produces the same numbers with any conforming library.

#ifndef QPOLAR_CLI_RANDOM_HPP_
#define QPOLAR_CLI_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "qpolar/matrix.hpp"
#include "qpolar/pgm.hpp"
#include "qpolar/procrustes.hpp"

namespace qpolar::cli {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();
  /// Real and imaginary parts iid N(0, 1/2).
  cplx complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Per-item seed derived from a base seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
Vector random_unit_vector(std::size_t dim, Rng& rng);
/// rows x cols with orthonormal columns (rows >= cols), Haar distributed.
ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);
/// W diag(sigma) V^dagger with Haar W, V; sigma.size() must equal min(rows, cols).
ComplexMatrix with_singular_values(std::size_t rows, std::size_t cols,
                                   const std::vector<double>& sigma, Rng& rng);
/// Ginibre matrix rescaled so sigma_max = 1.
ComplexMatrix random_normalized(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);
ComplexMatrix random_density(std::size_t n, Rng& rng);

/// r random pairs; realizable pairs use psi_j = W phi_j for one Haar W
/// (requires n == m).
ProcrustesInstance random_procrustes(std::size_t n, std::size_t m, std::size_t r,
                                     bool realizable, Rng& rng);
PGMInstance random_pgm(std::size_t dim, std::size_t count, Rng& rng);

}  // namespace qpolar::cli

#endif  // QPOLAR_CLI_RANDOM_HPP_
