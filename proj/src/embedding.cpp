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

#include "qpolar/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpolar/linalg.hpp"

namespace qpolar {

BlockHamiltonian::BlockHamiltonian(ComplexMatrix a) : a_(std::move(a)) {
  if (a_.empty()) throw std::invalid_argument("embed: empty matrix");
  full_ = block_swap(a_);
}

BlockHamiltonian embed(const ComplexMatrix& a) { return BlockHamiltonian(a); }

ComplexMatrix block_swap(const ComplexMatrix& u) {
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  ComplexMatrix h(n + m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(n + i, j) = u(i, j);
      h(j, n + i) = std::conj(u(i, j));
    }
  }
  return h;
}

double DilationVector::norm_sq() const {
  const double t = qpolar::norm(top);
  const double b = qpolar::norm(bottom);
  return t * t + b * b;
}

double DilationVector::norm() const { return std::sqrt(norm_sq()); }

Vector DilationVector::flatten() const {
  Vector v(top);
  v.insert(v.end(), bottom.begin(), bottom.end());
  return v;
}

DilationVector DilationVector::unflatten(std::span<const cplx> v,
                                         std::size_t right_dim) {
  if (right_dim > v.size()) throw std::invalid_argument("unflatten: split past end");
  return {Vector(v.begin(), v.begin() + right_dim),
          Vector(v.begin() + right_dim, v.end())};
}

DilationSpectrum eigenstructure(const BlockHamiltonian& h) {
  const std::size_t n = h.right_dim();
  const EigenDecomposition eig = hermitian_eig(h.matrix());
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  const double zero_cut = kRankTolerance * scale;

  DilationSpectrum out;
  // Positive eigenvalues come last in ascending order; walk them from the top
  // so pairs are sigma-descending. The -sigma partner is generated by the
  // block sign flip (r, l) -> (r, -l), which is the eigenvector of -sigma
  // whose top block overlaps maximally with r; that keeps degenerate sigma
  // deterministic.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    const double lambda = eig.values[k];
    if (lambda <= zero_cut) break;
    DilationVector v = DilationVector::unflatten(eig.vectors.col(k), n);
    // Re-split into unit r and l, then apply the phase convention on r.
    Vector r = normalized(v.top);
    Vector l = normalized(v.bottom);
    const cplx phase = fix_phase(r);
    for (auto& e : l) e *= std::conj(phase);
    EigenPair pair;
    pair.sigma = lambda;
    pair.plus = {scaled(r, inv_sqrt2), scaled(l, inv_sqrt2)};
    pair.minus = {scaled(r, inv_sqrt2), scaled(l, -inv_sqrt2)};
    out.pairs.push_back(std::move(pair));
  }
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (std::abs(eig.values[k]) <= zero_cut) {
      out.kernel.push_back(DilationVector::unflatten(eig.vectors.col(k), n));
    }
  }
  return out;
}

DilationVector inject_right(std::span<const cplx> psi, std::size_t left_dim) {
  return {Vector(psi.begin(), psi.end()), Vector(left_dim, cplx(0.0, 0.0))};
}

DilationVector inject_left(std::size_t right_dim, std::span<const cplx> psi) {
  return {Vector(right_dim, cplx(0.0, 0.0)), Vector(psi.begin(), psi.end())};
}

DilationVector inject_right(const BlockHamiltonian& h, std::span<const cplx> psi) {
  if (psi.size() != h.right_dim()) {
    throw std::invalid_argument("inject_right: vector has dimension " +
                                std::to_string(psi.size()) + ", right space has " +
                                std::to_string(h.right_dim()));
  }
  return inject_right(psi, h.left_dim());
}

DilationVector inject_left(const BlockHamiltonian& h, std::span<const cplx> psi) {
  if (psi.size() != h.left_dim()) {
    throw std::invalid_argument("inject_left: vector has dimension " +
                                std::to_string(psi.size()) + ", left space has " +
                                std::to_string(h.left_dim()));
  }
  return inject_left(h.right_dim(), psi);
}

std::pair<Vector, Vector> project_blocks(const DilationVector& v) {
  return {v.top, v.bottom};
}

}  // namespace qpolar
