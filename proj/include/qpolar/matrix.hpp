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

#ifndef QPOLAR_MATRIX_HPP_
#define QPOLAR_MATRIX_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qpolar {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

/// Default verification tolerance for desk-scale problems (dims <= 16).
inline constexpr double kDefaultTolerance = 1e-10;

/// Dense complex matrix, row-major. The universal carrier for A, H, rho and U.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const cplx> values);
  /// Column-stacked matrix: entry (i, j) = columns[j][i].
  static ComplexMatrix from_columns(std::span<const Vector> columns);
  /// |u><v|
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const cplx> entries() const { return entries_; }
  std::span<cplx> entries() { return entries_; }
  std::span<const cplx> row(std::size_t i) const {
    return std::span<const cplx>(entries_).subspan(i * cols_, cols_);
  }
  std::span<cplx> row(std::size_t i) {
    return std::span<cplx>(entries_).subspan(i * cols_, cols_);
  }
  Vector col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const cplx> values);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                      std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  bool is_hermitian(double tol = kDefaultTolerance) const;
  /// Frobenius norm of (M - M^dagger); zero iff exactly Hermitian.
  double hermitian_defect() const;
  bool is_unitary(double tol = kDefaultTolerance) const;
  /// M^dagger M = I (orthonormal columns).
  bool is_isometry(double tol = kDefaultTolerance) const;
  /// Hermitian with smallest eigenvalue >= -tol. Defined in linalg.cpp.
  bool is_positive_semidefinite(double tol = kDefaultTolerance) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
Vector operator*(const ComplexMatrix& a, std::span<const cplx> x);

/// Direct sum diag(a, b).
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// <x|y>
cplx dot(std::span<const cplx> x, std::span<const cplx> y);
double norm(std::span<const cplx> x);
Vector scaled(std::span<const cplx> x, cplx s);
Vector add(std::span<const cplx> x, std::span<const cplx> y);
Vector subtract(std::span<const cplx> x, std::span<const cplx> y);
Vector basis_vector(std::size_t dim, std::size_t index);
/// x / |x|; throws std::invalid_argument on the zero vector.
Vector normalized(std::span<const cplx> x);
double distance(std::span<const cplx> x, std::span<const cplx> y);
/// |<x|y>| for unit vectors.
double overlap(std::span<const cplx> x, std::span<const cplx> y);

}  // namespace qpolar

#endif  // QPOLAR_MATRIX_HPP_
