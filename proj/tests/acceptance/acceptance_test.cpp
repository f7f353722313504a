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

// Acceptance checks. Prints one PASS/FAIL line per criterion. With a numeric
// argument only that criterion runs. Exit status is 0 iff every selected
// criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qpolar/cli/commands.hpp"
#include "qpolar/cli/random.hpp"
#include "qpolar/cli/report.hpp"
#include "qpolar/cli/verify.hpp"
#include "qpolar/embedding.hpp"
#include "qpolar/hsvt.hpp"
#include "qpolar/linalg.hpp"
#include "qpolar/matrix.hpp"
#include "qpolar/pgm.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/procrustes.hpp"
#include "qpolar/spectral.hpp"

namespace qpolar {
namespace {

using cli::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // <= 0 means no limit
  std::function<Outcome()> run;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  return lo + std::min(hi - lo, static_cast<std::size_t>(rng.uniform() * span));
}

DilationVector random_dilation(std::size_t n, std::size_t m, Rng& rng) {
  return DilationVector::unflatten(cli::random_unit_vector(n + m, rng), n);
}

// ---- 1: polar oracle equivalence ----

Outcome polar_oracle_equivalence() {
  constexpr double kTol = 1e-9;
  Rng rng(101);
  double worst_support = 0.0;
  double worst_full = 0.0;
  int square = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = draw(rng, 1, 8);
    std::size_t n = m;
    if (trial % 2 == 1) {
      while (n == m) n = draw(rng, 1, 8);
    } else {
      ++square;
    }
    const ComplexMatrix a = cli::random_normalized(m, n, rng);
    if (svd(a).rank() != std::min(m, n)) return {false, "drew a rank-deficient A"};
    const ComplexMatrix u = classical_polar(a).isometry;
    const ComplexMatrix swap = block_swap(u);
    const ComplexMatrix support = direct_sum(u.adjoint() * u, u * u.adjoint());
    const Vector psi = cli::random_unit_vector(n + m, rng);
    // On the support of A the output is [[0,U^dagger],[U,0]] psi verbatim.
    const Vector on_support = support * psi;
    const Vector out_support =
        apply_polar_isometry(a, DilationVector::unflatten(on_support, n), Mode::kExact)
            .output.flatten();
    worst_support = std::max(worst_support, distance(out_support, swap * psi));
    // Off the support (the kernel of the wider side) the isometry is the identity.
    const Vector out_full =
        apply_polar_isometry(a, DilationVector::unflatten(psi, n), Mode::kExact)
            .output.flatten();
    const Vector expected = add(swap * psi, subtract(psi, on_support));
    worst_full = std::max(worst_full, distance(out_full, expected));
  }
  return {worst_support <= kTol && worst_full <= kTol,
          "200 A (" + std::to_string(square) + " square), support error " +
              sci(worst_support) + ", full-space error " + sci(worst_full) + ", tol " +
              sci(kTol)};
}

// ---- 2: QPE exactness on dyadic spectra ----

// sigma = k / 2^b with k in 1..2^b and sigma_max = 1.
std::vector<double> dyadic_sigma(std::size_t count, unsigned b, Rng& rng) {
  const std::size_t top = std::size_t{1} << b;
  std::vector<double> s{1.0};
  while (s.size() < count) s.push_back(static_cast<double>(draw(rng, 1, top)) / top);
  std::sort(s.rbegin(), s.rend());
  return s;
}

Outcome qpe_dyadic_exactness() {
  constexpr double kTol = 1e-9;
  Rng rng(202);
  double worst_infidelity = 0.0;
  double worst_leakage = 0.0;
  int runs = 0;
  for (unsigned b : {4u, 6u, 8u}) {
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t m = draw(rng, 1, 4);
      const std::size_t n = draw(rng, 1, 4);
      const std::size_t k = std::min(m, n);
      // The eigenvalue grid is 4 Lambda / 2^p for a p-bit pointer, so k / 2^b
      // is representable with p = b + 2. The second run keeps p = b and uses
      // multiples of 4 / 2^b instead.
      struct Run {
        std::vector<double> sigma;
        unsigned bits;
      };
      std::vector<double> coarse = dyadic_sigma(k, b - 2, rng);
      const Run variants[] = {{dyadic_sigma(k, b, rng), b + 2}, {coarse, b}};
      for (const Run& v : variants) {
        const ComplexMatrix a = cli::with_singular_values(m, n, v.sigma, rng);
        const DilationVector psi = random_dilation(n, m, rng);
        QpeConfig config;
        config.bits = v.bits;
        const PolarApplyResult qpe = apply_polar_isometry(a, psi, Mode::kQpe, config);
        const PolarApplyResult exact = apply_polar_isometry(a, psi, Mode::kExact);
        const double f = overlap(exact.output.flatten(), qpe.output.flatten());
        worst_infidelity = std::max({worst_infidelity, 1.0 - f,
                                     1.0 - qpe.diagnostics.fidelity_vs_exact});
        worst_leakage = std::max(worst_leakage, qpe.diagnostics.leakage_norm);
        ++runs;
      }
    }
  }
  return {worst_infidelity <= kTol && worst_leakage <= kTol,
          std::to_string(runs) + " runs over b in {4,6,8}, max infidelity " +
              sci(worst_infidelity) + ", max leakage " + sci(worst_leakage)};
}

// ---- 3: condition-number scaling ----

Outcome condition_number_scaling() {
  constexpr double kFloor = 0.99;
  constexpr double kMonotoneSlack = 1e-12;
  constexpr int kInstances = 5;
  Rng rng(303);
  bool pass = true;
  std::ostringstream detail;
  for (double kappa : {2.0, 8.0, 32.0}) {
    const auto threshold = static_cast<unsigned>(std::ceil(std::log2(4.0 * kappa) - 1e-12));
    double min_above = 1.0;
    int non_monotone = 0;
    double largest_drop = 0.0;
    for (int inst = 0; inst < kInstances; ++inst) {
      const std::size_t n = 4;
      std::vector<double> s{1.0, 1.0 / kappa};
      while (s.size() < n) s.push_back(std::pow(kappa, -rng.uniform()));
      std::sort(s.rbegin(), s.rend());
      const ComplexMatrix a = cli::with_singular_values(n, n, s, rng);
      const DilationVector psi = random_dilation(n, n, rng);
      double previous = 0.0;
      for (unsigned b = 2; b <= threshold + 3; ++b) {
        QpeConfig config;
        config.bits = b;
        const double f =
            apply_polar_isometry(a, psi, Mode::kQpe, config).diagnostics.fidelity_vs_exact;
        if (f < previous - kMonotoneSlack) ++non_monotone;
        largest_drop = std::max(largest_drop, previous - f);
        if (b >= threshold) min_above = std::min(min_above, f);
        previous = f;
      }
    }
    const bool ok = min_above >= kFloor && non_monotone == 0;
    pass = pass && ok;
    char line[160];
    std::snprintf(line, sizeof line,
                  "kappa %g: min fidelity %.6f for b >= %u, %d decreases (largest %.1e); ",
                  kappa, min_above, threshold, non_monotone, largest_drop);
    detail << line;
  }
  std::string text = detail.str();
  text.resize(text.size() - 2);
  return {pass, text};
}

// ---- 4: positive-factor evolution ----

Outcome positive_factor_evolution() {
  constexpr double kTol = 1e-10;
  Rng rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = draw(rng, 1, 8);
    const std::size_t n = draw(rng, 1, 8);
    const ComplexMatrix a = cli::random_normalized(m, n, rng);
    const PolarFactors f = classical_polar(a);
    const DilationVector psi = random_dilation(n, m, rng);
    for (double t : {0.1, 1.0, std::numbers::pi}) {
      const ComplexMatrix expected = direct_sum(matrix_exp_hermitian(f.right_positive, t),
                                                matrix_exp_hermitian(f.left_positive, t));
      const PolarApplyResult r = evolve_positive_factor(a, t, psi, Mode::kExact);
      worst = std::max(worst, distance(r.output.flatten(), expected * psi.flatten()));
    }
  }
  return {worst <= kTol, "100 A x 3 times, max error " + sci(worst)};
}

// ---- 5: flag semantics ----

Outcome flag_semantics() {
  constexpr double kProbTol = 1e-10;
  constexpr double kBranchTol = 1e-9;
  Rng rng(505);
  double worst_prob = 0.0;
  double worst_branch = 0.0;
  int runs = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const bool qpe = trial % 2 == 1;
    const std::size_t m = draw(rng, 2, 6);
    const std::size_t n = draw(rng, 2, 6);
    const std::size_t k = std::min(m, n);
    QpeConfig config;
    config.bits = 6;
    // Threshold 1/kappa_tilde sits strictly between grid points (spacing 1/16).
    const double kappa_tilde = qpe ? 16.0 / (draw(rng, 2, 10) + 0.5) : 1.5 + 6.0 * rng.uniform();
    const double cut = 1.0 / kappa_tilde;
    std::vector<double> sigma{1.0};
    while (sigma.size() < k) {
      double s = qpe ? static_cast<double>(draw(rng, 1, 16)) / 16.0 : rng.uniform();
      if (!qpe && std::abs(s - cut) < 1e-3) continue;
      sigma.push_back(s);
    }
    sigma[k - 1] = qpe ? std::floor(cut * 16.0) / 16.0 : cut * rng.uniform();
    if (sigma[k - 1] == 0.0) sigma[k - 1] = 1.0 / 16.0;
    // A = diag(sigma_j e^{i theta_j}); U restricted to sigma >= cut is diag(e^{i theta_j}).
    ComplexMatrix a(m, n);
    ComplexMatrix u_well(m, n);
    for (std::size_t j = 0; j < k; ++j) {
      const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      a(j, j) = sigma[j] * phase;
      if (sigma[j] >= cut) u_well(j, j) = phase;
    }
    const DilationVector psi = random_dilation(n, m, rng);
    const Vector flat = psi.flatten();
    // Projector onto dilation eigenvalues below the cut, from its eigendecomposition.
    const EigenDecomposition eig = hermitian_eig(embed(a).matrix());
    double ill = 0.0;
    for (std::size_t c = 0; c < eig.values.size(); ++c) {
      if (std::abs(eig.values[c]) < cut) ill += std::norm(dot(eig.vectors.col(c), flat));
    }
    if (config.kappa_tilde = kappa_tilde; !qpe) config.bits = 8;
    const PolarApplyResult r =
        apply_polar_wellconditioned(a, psi, kappa_tilde, qpe ? Mode::kQpe : Mode::kExact, config);
    worst_prob = std::max({worst_prob, std::abs(r.diagnostics.flag_probability - ill),
                           std::abs(r.flagged.norm_sq() - ill)});
    worst_branch =
        std::max(worst_branch, distance(r.output.flatten(), block_swap(u_well) * flat));
    ++runs;
  }
  return {worst_prob <= kProbTol && worst_branch <= kBranchTol,
          std::to_string(runs) + " diag A (exact and qpe), flag probability error " +
              sci(worst_prob) + ", clear branch error " + sci(worst_branch)};
}

// ---- 6: Trotter order ----

Outcome trotter_order() {
  constexpr double kSlopeTol = 0.2;
  Rng rng(606);
  double local_lo = INFINITY, local_hi = -INFINITY;
  double global_lo = INFINITY, global_hi = -INFINITY;
  int instances = 0;
  while (instances < 10) {
    const std::size_t n = draw(rng, 2, 3);
    const std::size_t m = draw(rng, 2, 3);
    const std::size_t r = draw(rng, 2, 4);
    const ProcrustesInstance inst = cli::random_procrustes(n, m, r, false, rng);
    const DensityPair d = reduced_density(inst);
    // A commuting pair has no Trotter error to measure.
    if ((d.rho * d.rho_conjugated - d.rho_conjugated * d.rho).max_abs() < 1e-3) continue;
    const ComplexMatrix h = embed(inst.target()).matrix() * (1.0 / static_cast<double>(r));
    const std::vector<double> dts{1e-1, 1e-2, 1e-3};
    std::vector<double> local;
    for (double dt : dts) local.push_back(spectral_norm(dme_step(d, dt) - matrix_exp_hermitian(h, dt)));
    const double ls = cli::loglog_slope(dts, local);
    const DilationVector psi = random_dilation(n, m, rng);
    const std::vector<double> steps{50, 100, 200, 400};
    std::vector<double> global;
    for (double s : steps) {
      global.push_back(
          effective_hamiltonian_evolution(inst, 1.0, static_cast<std::size_t>(s), psi)
              .operator_error);
    }
    const double gs = cli::loglog_slope(steps, global);
    local_lo = std::min(local_lo, ls);
    local_hi = std::max(local_hi, ls);
    global_lo = std::min(global_lo, gs);
    global_hi = std::max(global_hi, gs);
    ++instances;
  }
  const bool pass = std::abs(local_lo - 2.0) <= kSlopeTol && std::abs(local_hi - 2.0) <= kSlopeTol &&
                    std::abs(global_lo + 1.0) <= kSlopeTol &&
                    std::abs(global_hi + 1.0) <= kSlopeTol;
  std::ostringstream detail;
  detail.precision(3);
  detail << "10 instances, local slope in [" << local_lo << ", " << local_hi
         << "], global slope in [" << global_lo << ", " << global_hi << "]";
  return {pass, detail.str()};
}

// ---- 7: Procrustes optimality ----

Outcome procrustes_optimality() {
  constexpr double kSlack = 1e-12;
  Rng rng(707);
  int min_violations = 0;
  int max_violations = 0;
  double min_gap = INFINITY;
  for (int inst_index = 0; inst_index < 20; ++inst_index) {
    const std::size_t n = draw(rng, 2, 4);
    const std::size_t r = draw(rng, 1, 5);
    const ProcrustesInstance inst = cli::random_procrustes(n, n, r, false, rng);
    const ProcrustesSolution best = solve_procrustes_classical(inst);
    const double lo = procrustes_residual(inst, best.unitary);
    const double hi = procrustes_residual(inst, best.unitary * cplx(-1.0));
    for (int q = 0; q < 1000; ++q) {
      const double res = procrustes_residual(inst, cli::haar_unitary(n, rng));
      if (lo > res + kSlack) ++min_violations;
      if (hi < res - kSlack) ++max_violations;
      min_gap = std::min(min_gap, res - lo);
    }
  }
  return {min_violations == 0 && max_violations == 0,
          "20 instances x 1000 Q, " + std::to_string(min_violations) + " below U*, " +
              std::to_string(max_violations) + " above -U*, smallest gap " + sci(min_gap)};
}

// ---- 8: HSVT isolation ----

Outcome hsvt_isolation() {
  constexpr double kTol = 1e-14;
  Rng rng(808);
  double worst = 0.0;
  double worst_swap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = draw(rng, 2, 8);
    const std::size_t split = draw(rng, 1, dim - 1);
    ComplexMatrix m = cli::random_hermitian(dim, rng);
    const ComplexMatrix a = m.block(split, 0, dim - split, split);
    const ComplexMatrix expected = embed(a).matrix();
    worst = std::max(worst, (conjugation_difference(SplitHamiltonian(m, split)) - expected).max_abs());
    // Fresh diagonal blocks, same off-diagonal block.
    m.set_block(0, 0, cli::random_hermitian(split, rng));
    m.set_block(split, split, cli::random_hermitian(dim - split, rng));
    const SplitHamiltonian swapped(m, split);
    worst_swap = std::max(worst_swap, (conjugation_difference(swapped) - expected).max_abs());
    worst_swap = std::max(worst_swap, (isolate_offdiagonal(swapped).a_block() - a).max_abs());
  }
  return {worst <= kTol && worst_swap <= kTol,
          "100 M, max entry error " + sci(worst) + ", with resampled D and D~ " + sci(worst_swap)};
}

// ---- 9: PGM dual path ----

Outcome pgm_dual_path() {
  constexpr double kPathTol = 1e-8;
  constexpr double kCompletenessTol = 1e-10;
  constexpr double kReprepareTol = 1e-8;
  Rng rng(909);
  double worst_path = 0.0;
  double worst_complete = 0.0;
  double worst_reprepare = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = draw(rng, 1, 6);
    const std::size_t n = draw(rng, 1, 6);
    const PGMInstance inst = cli::random_pgm(d, n, rng);
    const ComplexMatrix rho = cli::random_density(d, rng);
    const std::vector<Vector> chi = pgm_vectors(inst);
    const PGMPolarResult polar = pgm_via_polar(inst, rho, Mode::kExact);
    ComplexMatrix povm_sum(d, d);
    for (std::size_t j = 0; j < n; ++j) {
      const double direct = dot(chi[j], rho * chi[j]).real();
      worst_path = std::max(worst_path, std::abs(polar.probabilities[j] - direct));
      const Vector back = polar.isometry.adjoint() * basis_vector(n, j);
      worst_reprepare = std::max(worst_reprepare, distance(back, chi[j]));
      povm_sum += ComplexMatrix::outer(chi[j], chi[j]);
    }
    worst_complete = std::max({worst_complete, completeness_residual(inst),
                               frobenius_distance(povm_sum, inst.span_projector())});
  }
  return {worst_path <= kPathTol && worst_complete <= kCompletenessTol &&
              worst_reprepare <= kReprepareTol,
          "100 instances, path gap " + sci(worst_path) + ", completeness " +
              sci(worst_complete) + ", re-preparation " + sci(worst_reprepare)};
}

// ---- 10: determinism ----

std::string verify_output(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = cli::run(args, out, err);
  return out.str();
}

Outcome verify_determinism() {
  int compared = 0;
  int mismatches = 0;
  int failures = 0;
  for (const char* seed : {"1", "7", "2026"}) {
    for (const std::string& suite : cli::verify_suites()) {
      const std::vector<std::string> args{"verify", "--suite", suite, "--seed", seed};
      int c1 = 0;
      int c2 = 0;
      const std::string first = cli::strip_timings(verify_output(args, c1));
      const std::string second = cli::strip_timings(verify_output(args, c2));
      if (c1 != 0 || c2 != 0) ++failures;
      if (first.empty() || first != second) ++mismatches;
      ++compared;
    }
  }
  return {mismatches == 0,
          std::to_string(compared) + " repeated runs, " + std::to_string(mismatches) +
              " differ modulo timings (" + std::to_string(failures) + " with failing verdicts)"};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "polar oracle equivalence", 10.0, polar_oracle_equivalence},
      {2, "qpe exactness on dyadic spectra", 30.0, qpe_dyadic_exactness},
      {3, "condition-number scaling", 60.0, condition_number_scaling},
      {4, "positive-factor evolution", 10.0, positive_factor_evolution},
      {5, "flag semantics", 0.0, flag_semantics},
      {6, "trotter order", 0.0, trotter_order},
      {7, "procrustes optimality", 60.0, procrustes_optimality},
      {8, "hsvt isolation", 0.0, hsvt_isolation},
      {9, "pgm dual path", 0.0, pgm_dual_path},
      {10, "verify determinism", 0.0, verify_determinism},
  };
  return all;
}

bool run_one(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = c.run();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string timing = std::to_string(seconds).substr(0, 5) + " s";
  if (c.time_limit_s > 0.0) {
    timing += " of " + std::to_string(static_cast<int>(c.time_limit_s)) + " s";
    if (seconds >= c.time_limit_s) outcome.pass = false;
  }
  std::printf("%s criterion %d (%s): %s [%s]\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
              outcome.detail.c_str(), timing.c_str());
  std::fflush(stdout);
  return outcome.pass;
}

}  // namespace
}  // namespace qpolar

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1-10]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  for (const qpolar::Criterion& c : qpolar::criteria()) {
    if (only != 0 && c.id != only) continue;
    all_pass = qpolar::run_one(c) && all_pass;
  }
  return all_pass ? 0 : 1;
}
