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

// Seeded invariant battery behind `qpolar verify`. Each item draws its own
// seed from (base seed, item index) and writes into its own report, so the
// merged report does not depend on how items were scheduled across threads.

#ifndef QPOLAR_CLI_VERIFY_HPP_
#define QPOLAR_CLI_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpolar/cli/report.hpp"
#include "qpolar/matrix.hpp"

namespace qpolar::cli {

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  unsigned threads = 1;
};

/// Suite names accepted by run_verify, "all" first.
std::vector<std::string> verify_suites();

/// Item names of one suite, in report order.
std::vector<std::string> verify_items(const std::string& suite);

/// Throws std::invalid_argument for an unknown suite.
Report run_verify(const VerifyOptions& options);

/// Expected polar-isometry output computed from classical_polar alone.
/// Singular values at or above sigma_max / kappa_tilde are well conditioned;
/// without kappa_tilde every nonzero one is. The clear branch is
/// [[0, U_w^dagger], [U_w, 0]] psi plus, without kappa_tilde, the kernel
/// component of psi unchanged; with kappa_tilde everything outside the
/// well-conditioned support goes to the flagged branch.
struct PolarOracle {
  Vector clear;
  Vector flagged;
};
PolarOracle polar_oracle(const ComplexMatrix& a, std::span<const cplx> psi,
                         std::optional<double> kappa_tilde = std::nullopt);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qpolar::cli

#endif  // QPOLAR_CLI_VERIFY_HPP_
