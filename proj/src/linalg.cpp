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

#include "qpolar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qpolar/kernels.hpp"

namespace qpolar {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_usable(const ComplexMatrix& a, const char* op) {
  if (a.empty()) throw std::invalid_argument(std::string(op) + ": empty matrix");
  if (!a.all_finite()) {
    throw std::invalid_argument(std::string(op) + ": non-finite entries");
  }
}

// Jacobi parameters for the 2x2 problem with diagonal (app, aqq) and real
// off-diagonal g > 0: t = tan(theta) is the smaller root of
// t^2 + 2 zeta t - 1 = 0.
void rotation(double app, double aqq, double g, double& c, double& s) {
  const double zeta = (aqq - app) / (2.0 * g);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  c = 1.0 / std::sqrt(1.0 + t * t);
  s = t * c;
}

struct ThinSvd {
  std::vector<Vector> left;
  std::vector<double> sigma;
  std::vector<Vector> right;
};

// One-sided Jacobi on a tall (m >= n) matrix given as columns.
ThinSvd jacobi_svd_tall(std::vector<Vector> u, std::size_t m) {
  const std::size_t n = u.size();
  std::vector<Vector> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = basis_vector(n, j);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = kernels::norm_sq(u[p]);
        const double beta = kernels::norm_sq(u[q]);
        const cplx gamma = kernels::dotc(u[p], u[q]);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase_conj = std::conj(gamma / g);
        double c = 0.0;
        double s = 0.0;
        rotation(alpha, beta, g, c, s);
        // u_p' = c u_p - s e^{-i phi} u_q,  u_q' = s u_p + c e^{-i phi} u_q
        for (std::size_t i = 0; i < m; ++i) {
          const cplx up = u[p][i];
          const cplx uq = phase_conj * u[q][i];
          u[p][i] = c * up - s * uq;
          u[q][i] = s * up + c * uq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cplx vp = v[p][i];
          const cplx vq = phase_conj * v[q][i];
          v[p][i] = c * vp - s * vq;
          v[q][i] = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm(u[j]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  ThinSvd out;
  const double sigma_max = n ? norms[order[0]] : 0.0;
  for (std::size_t idx : order) {
    const double sigma = norms[idx];
    out.right.push_back(v[idx]);
    if (sigma_max > 0.0 && sigma > kRankTolerance * sigma_max) {
      out.sigma.push_back(sigma);
      out.left.push_back(scaled(u[idx], 1.0 / sigma));
    } else {
      out.sigma.push_back(0.0);
      out.left.emplace_back();
    }
  }

  // Orthonormal completion of the left vectors belonging to zero singular
  // values: take the standard basis vector with the largest residual after
  // projecting out what is already there (ties to the lowest index).
  for (std::size_t j = 0; j < n; ++j) {
    if (!out.left[j].empty()) continue;
    Vector best;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      Vector w = basis_vector(m, i);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& l : out.left) {
          if (l.empty()) continue;
          kernels::axpy(-kernels::dotc(l, w), l, w);
        }
      }
      const double wn = norm(w);
      if (wn > best_norm * (1.0 + 1e-12)) {
        best_norm = wn;
        best = std::move(w);
      }
    }
    out.left[j] = scaled(best, 1.0 / best_norm);
  }
  return out;
}

ComplexMatrix columns_to_matrix(const std::vector<Vector>& cols, std::size_t rows) {
  ComplexMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

}  // namespace

cplx fix_phase(std::span<cplx> v) {
  double max_mag = 0.0;
  for (const auto& e : v) max_mag = std::max(max_mag, std::abs(e));
  if (max_mag == 0.0) return 1.0;
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= max_mag * (1.0 - 1e-12)) {
      pivot = i;
      break;
    }
  }
  const cplx phase = v[pivot] / std::abs(v[pivot]);
  const cplx inv = std::conj(phase);
  for (auto& e : v) e *= inv;
  v[pivot] = std::abs(v[pivot]);
  return phase;
}

ComplexMatrix SVDResult::reconstruct() const {
  ComplexMatrix scaled_left = left_vectors;
  for (std::size_t i = 0; i < scaled_left.rows(); ++i) {
    for (std::size_t j = 0; j < scaled_left.cols(); ++j) {
      scaled_left(i, j) *= singular_values[j];
    }
  }
  return scaled_left * right_vectors.adjoint();
}

std::size_t SVDResult::rank() const {
  if (singular_values.empty() || singular_values[0] == 0.0) return 0;
  const double cut = kRankTolerance * singular_values[0];
  return static_cast<std::size_t>(
      std::count_if(singular_values.begin(), singular_values.end(),
                    [cut](double s) { return s > cut; }));
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  ComplexMatrix scaled_vecs = vectors;
  for (std::size_t i = 0; i < scaled_vecs.rows(); ++i) {
    for (std::size_t j = 0; j < scaled_vecs.cols(); ++j) scaled_vecs(i, j) *= values[j];
  }
  return scaled_vecs * vectors.adjoint();
}

SVDResult svd(const ComplexMatrix& a) {
  require_usable(a, "svd");
  const bool tall = a.rows() >= a.cols();
  const ComplexMatrix work = tall ? a : a.adjoint();
  std::vector<Vector> cols(work.cols());
  for (std::size_t j = 0; j < work.cols(); ++j) cols[j] = work.col(j);
  ThinSvd t = jacobi_svd_tall(std::move(cols), work.rows());

  // For wide A we decomposed A^dagger = sum s l' r'^dagger, so A's left
  // vectors are r' and its right vectors are l'.
  std::vector<Vector>& left = tall ? t.left : t.right;
  std::vector<Vector>& right = tall ? t.right : t.left;
  for (std::size_t j = 0; j < right.size(); ++j) {
    const cplx phase = fix_phase(right[j]);
    const cplx inv = std::conj(phase);
    for (auto& e : left[j]) e *= inv;
  }

  SVDResult result;
  result.left_vectors = columns_to_matrix(left, a.rows());
  result.singular_values = std::move(t.sigma);
  result.right_vectors = columns_to_matrix(right, a.cols());
  return result;
}

PolarFactors classical_polar(const ComplexMatrix& a) {
  const SVDResult s = svd(a);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  PolarFactors f{ComplexMatrix(m, n), ComplexMatrix(n, n), ComplexMatrix(m, m)};
  const std::size_t rank = s.rank();
  for (std::size_t j = 0; j < rank; ++j) {
    const Vector l = s.left_vectors.col(j);
    const Vector r = s.right_vectors.col(j);
    const double sigma = s.singular_values[j];
    f.isometry += ComplexMatrix::outer(l, r);
    f.right_positive += sigma * ComplexMatrix::outer(r, r);
    f.left_positive += sigma * ComplexMatrix::outer(l, l);
  }
  return f;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h, double tol) {
  require_usable(h, "hermitian_eig");
  if (!h.is_square()) {
    throw NotHermitianError(std::numeric_limits<double>::infinity());
  }
  const double defect = h.hermitian_defect();
  if (defect > tol * std::max(1.0, h.frobenius_norm())) throw NotHermitianError(defect);

  const std::size_t n = h.rows();
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double total = a.frobenius_norm();

  for (int sweep = 0; sweep < kMaxSweeps && total > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (std::sqrt(off) <= kEps * 1e-2 * total) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        // G = D P with D = diag(1, e^{-i phi}) on (p, q) making the pivot real,
        // P the real Jacobi rotation [[c, s], [-s, c]].
        const cplx d = std::conj(apq / g);
        double c = 0.0;
        double s = 0.0;
        rotation(a(p, p).real(), a(q, q).real(), g, c, s);
        const cplx gqp = -s * d;
        const cplx gqq = c * d;
        for (std::size_t k = 0; k < n; ++k) {  // A <- A G
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + akq * gqp;
          a(k, q) = s * akp + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- G^dagger A
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V G
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + vkq * gqp;
          v(k, q) = s * vkp + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenDecomposition out;
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values.push_back(a(order[j], order[j]).real());
    Vector col = v.col(order[j]);
    fix_phase(col);
    out.vectors.set_col(j, col);
  }
  return out;
}

ComplexMatrix hermitian_function(const ComplexMatrix& h,
                                 const std::function<double(double)>& f) {
  const EigenDecomposition e = hermitian_eig(h);
  ComplexMatrix scaled_vecs = e.vectors;
  for (std::size_t j = 0; j < e.values.size(); ++j) {
    const double fj = f(e.values[j]);
    for (std::size_t i = 0; i < scaled_vecs.rows(); ++i) scaled_vecs(i, j) *= fj;
  }
  return scaled_vecs * e.vectors.adjoint();
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t) {
  const EigenDecomposition e = hermitian_eig(h);
  ComplexMatrix scaled_vecs = e.vectors;
  for (std::size_t j = 0; j < e.values.size(); ++j) {
    const cplx phase = std::polar(1.0, -e.values[j] * t);
    for (std::size_t i = 0; i < scaled_vecs.rows(); ++i) scaled_vecs(i, j) *= phase;
  }
  return scaled_vecs * e.vectors.adjoint();
}

ComplexMatrix closest_positive(const ComplexMatrix& h) {
  return hermitian_function(h, [](double x) { return std::abs(x); });
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("frobenius_distance: shape mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::norm(a.entries()[i] - b.entries()[i]);
  }
  return std::sqrt(s);
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  return svd(a).singular_values.front();
}

ComplexMatrix expm(const ComplexMatrix& x) {
  require_usable(x, "expm");
  if (!x.is_square()) throw std::invalid_argument("expm: matrix is not square");
  const std::size_t n = x.rows();
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(x(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  while (norm1 > 0.25) {
    norm1 *= 0.5;
    ++squarings;
  }
  const ComplexMatrix y = x * std::ldexp(1.0, -squarings);
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * y) * (1.0 / k);
    sum += term;
    if (term.max_abs() <= kEps * 1e-3) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, std::uint64_t k) {
  if (!m.is_square()) throw std::invalid_argument("matrix_power: matrix is not square");
  ComplexMatrix result = ComplexMatrix::identity(m.rows());
  ComplexMatrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool ComplexMatrix::is_positive_semidefinite(double tol) const {
  if (!is_hermitian(tol * std::max(1.0, frobenius_norm()))) return false;
  const EigenDecomposition e = hermitian_eig(*this, tol);
  return e.values.empty() || e.values.front() >= -tol;
}

}  // namespace qpolar
