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

#ifndef QPOLAR_TESTS_TEST_UTIL_HPP_
#define QPOLAR_TESTS_TEST_UTIL_HPP_

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qpolar/cli/random.hpp"
#include "qpolar/embedding.hpp"
#include "qpolar/linalg.hpp"
#include "qpolar/matrix.hpp"

namespace qpolar::testing {

using cli::Rng;

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.cols(), b.cols());
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).max_abs();
}

inline double max_entry_diff(std::span<const cplx> a, std::span<const cplx> b) {
  EXPECT_EQ(a.size(), b.size());
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline DilationVector random_dilation(std::size_t n, std::size_t m, Rng& rng) {
  return DilationVector::unflatten(cli::random_unit_vector(n + m, rng), n);
}

/// 2x2 rotation by theta.
inline ComplexMatrix rotation(double theta) {
  return {{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}};
}

}  // namespace qpolar::testing

#endif  // QPOLAR_TESTS_TEST_UTIL_HPP_
