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

#include "qpolar/cli/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpolar/linalg.hpp"

namespace qpolar::cli {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (auto& e : g.entries()) e = rng.complex_normal();
  return g;
}

Vector random_unit_vector(std::size_t dim, Rng& rng) {
  Vector v(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (auto& e : v) e = rng.complex_normal();
    n = norm(v);
  }
  return scaled(v, 1.0 / n);
}

ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (cols > rows) throw std::invalid_argument("isometry needs rows >= cols");
  // Gram-Schmidt on Gaussian columns; R has a positive diagonal by
  // construction, which makes Q Haar distributed.
  ComplexMatrix q = ginibre(rows, cols, rng);
  for (std::size_t j = 0; j < cols; ++j) {
    Vector v = q.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const Vector u = q.col(k);
        const cplx c = dot(u, v);
        for (std::size_t i = 0; i < rows; ++i) v[i] -= c * u[i];
      }
    }
    q.set_col(j, normalized(v));
  }
  return q;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) { return haar_isometry(n, n, rng); }

ComplexMatrix with_singular_values(std::size_t rows, std::size_t cols,
                                   const std::vector<double>& sigma, Rng& rng) {
  const std::size_t k = std::min(rows, cols);
  if (sigma.size() != k) throw std::invalid_argument("need min(rows, cols) singular values");
  const ComplexMatrix w = haar_isometry(rows, k, rng);
  const ComplexMatrix v = haar_isometry(cols, k, rng);
  return w * ComplexMatrix::diagonal(std::span<const double>(sigma)) * v.adjoint();
}

ComplexMatrix random_normalized(std::size_t rows, std::size_t cols, Rng& rng) {
  const ComplexMatrix g = ginibre(rows, cols, rng);
  return g * (1.0 / spectral_norm(g));
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_density(std::size_t n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  // Exact Hermitian symmetry so downstream checks see no rounding skew.
  return (rho + rho.adjoint()) * 0.5;
}

ProcrustesInstance random_procrustes(std::size_t n, std::size_t m, std::size_t r,
                                     bool realizable, Rng& rng) {
  if (realizable && n != m) throw std::invalid_argument("realizable instances need n == m");
  std::vector<StatePair> pairs;
  const ComplexMatrix w = realizable ? haar_unitary(n, rng) : ComplexMatrix();
  for (std::size_t j = 0; j < r; ++j) {
    Vector phi = random_unit_vector(n, rng);
    Vector psi = realizable ? normalized(w * phi) : random_unit_vector(m, rng);
    pairs.push_back({std::move(phi), std::move(psi)});
  }
  return ProcrustesInstance(std::move(pairs));
}

PGMInstance random_pgm(std::size_t dim, std::size_t count, Rng& rng) {
  std::vector<Vector> states;
  for (std::size_t j = 0; j < count; ++j) states.push_back(random_unit_vector(dim, rng));
  return PGMInstance(std::move(states));
}

}  // namespace qpolar::cli
