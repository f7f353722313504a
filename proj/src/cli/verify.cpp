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

#include "qpolar/cli/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>

#include "qpolar/cli/random.hpp"
#include "qpolar/embedding.hpp"
#include "qpolar/hsvt.hpp"
#include "qpolar/linalg.hpp"
#include "qpolar/pgm.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/procrustes.hpp"

namespace qpolar::cli {

namespace {

struct Item {
  std::string suite;
  std::string name;
  std::function<void(Rng&, double, Report&)> run;
};

DilationVector random_dilation(const ComplexMatrix& a, Rng& rng) {
  return DilationVector::unflatten(random_unit_vector(a.rows() + a.cols(), rng), a.cols());
}

Vector polar_oracle_action(const ComplexMatrix& a, const Vector& psi) {
  return polar_oracle(a, psi).clear;
}

std::vector<double> dyadic_singular_values(std::size_t k, unsigned bits, Rng& rng) {
  const std::size_t top = (std::size_t{1} << bits) / 4;  // sigma = c / top, c in 1..top
  std::vector<double> s{1.0};
  while (s.size() < k) {
    const auto c = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(top));
    s.push_back(static_cast<double>(std::min(c, top)) / static_cast<double>(top));
  }
  std::sort(s.rbegin(), s.rend());
  return s;
}

void polar_item(std::size_t m, std::size_t n, Rng& rng, double tol, Report& r) {
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexMatrix a = random_normalized(m, n, rng);
    const DilationVector psi = random_dilation(a, rng);
    const PolarApplyResult res = apply_polar_isometry(a, psi, Mode::kExact);
    worst = std::max(worst, distance(res.output.flatten(), polar_oracle_action(a, psi.flatten())));
  }
  r.metric("max_oracle_error", worst);
  r.verdict("oracle_error_within_tol", worst <= tol);
}

void qpe_item(unsigned bits, Rng& rng, double tol, Report& r) {
  double worst_infidelity = 0.0;
  double worst_leakage = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const std::size_t n = 3;
    const ComplexMatrix a = with_singular_values(n, n, dyadic_singular_values(n, bits, rng), rng);
    const DilationVector psi = random_dilation(a, rng);
    QpeConfig config;
    config.bits = bits;
    const PolarApplyResult res = apply_polar_isometry(a, psi, Mode::kQpe, config);
    worst_infidelity = std::max(worst_infidelity, 1.0 - res.diagnostics.fidelity_vs_exact);
    worst_leakage = std::max(worst_leakage, res.diagnostics.leakage_norm);
  }
  r.metric("max_infidelity", worst_infidelity);
  r.metric("max_leakage", worst_leakage);
  r.verdict("fidelity_within_tol", worst_infidelity <= tol);
  r.verdict("leakage_within_tol", worst_leakage <= tol);
}

void scaling_item(double kappa, Rng& rng, Report& r) {
  const std::size_t n = 4;
  std::vector<double> s{1.0, 1.0 / kappa};
  while (s.size() < n) s.push_back(std::pow(kappa, -rng.uniform()));
  std::sort(s.rbegin(), s.rend());
  const ComplexMatrix a = with_singular_values(n, n, s, rng);
  const DilationVector psi = random_dilation(a, rng);
  const auto threshold = static_cast<unsigned>(std::ceil(std::log2(4.0 * kappa) - 1e-12));
  bool monotone = true;
  bool above = true;
  double previous = 0.0;
  for (unsigned b = 2; b <= threshold + 2; ++b) {
    QpeConfig config;
    config.bits = b;
    const double f = apply_polar_isometry(a, psi, Mode::kQpe, config).diagnostics.fidelity_vs_exact;
    r.metric("fidelity_b" + std::to_string(b), f);
    if (f < previous - 1e-12) monotone = false;
    if (b >= threshold && f < 0.99) above = false;
    previous = f;
  }
  r.metric("bits_threshold", static_cast<double>(threshold));
  r.verdict("fidelity_above_threshold", above);
  r.verdict("monotone_in_bits", monotone);
}

void evolve_item(Rng& rng, Report& r) {
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = random_normalized(3, 4, rng);
    const DilationVector psi = random_dilation(a, rng);
    const PolarFactors f = classical_polar(a);
    for (double t : {0.1, 1.0, std::numbers::pi}) {
      const ComplexMatrix expected = direct_sum(matrix_exp_hermitian(f.right_positive, t),
                                                matrix_exp_hermitian(f.left_positive, t));
      const PolarApplyResult res = evolve_positive_factor(a, t, psi, Mode::kExact);
      worst = std::max(worst, distance(res.output.flatten(), expected * psi.flatten()));
    }
  }
  r.metric("max_oracle_error", worst);
  r.verdict("oracle_error_within_1e-10", worst <= 1e-10);
}

void generalized_item(Rng& rng, double tol, Report& r) {
  double worst = 0.0;
  const ParityExtension odd{[](double x) { return std::sin(x); }, Parity::kOdd, "sin"};
  const ParityExtension even{[](double x) { return x * x; }, Parity::kEven, "square"};
  for (int trial = 0; trial < 4; ++trial) {
    const ComplexMatrix a = random_normalized(4, 3, rng) * 1.7;
    const DilationVector psi = random_dilation(a, rng);
    for (const auto* ext : {&odd, &even}) {
      const ComplexMatrix expected = matrix_exp_hermitian(parity_hamiltonian(a, *ext), 0.8);
      const PolarApplyResult res = evolve_generalized(a, *ext, 0.8, psi, Mode::kExact);
      worst = std::max(worst, distance(res.output.flatten(), expected * psi.flatten()));
    }
  }
  r.metric("max_oracle_error", worst);
  r.verdict("oracle_error_within_tol", worst <= tol);
}

void flag_item(Rng& rng, Report& r) {
  const std::vector<double> sigma{1.0, 0.6, 0.3, 0.12, 0.04};
  const double kappa_tilde = 5.0;  // cutoff 0.2
  const ComplexMatrix a = ComplexMatrix::diagonal(std::span<const double>(sigma));
  const DilationVector psi = random_dilation(a, rng);
  const PolarApplyResult res =
      apply_polar_wellconditioned(a, psi, kappa_tilde, Mode::kExact);

  ComplexMatrix u_well(5, 5);
  ComplexMatrix p_ill_half(5, 5);
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    (sigma[j] >= 1.0 / kappa_tilde ? u_well : p_ill_half)(j, j) = 1.0;
  }
  const ComplexMatrix p_ill = direct_sum(p_ill_half, p_ill_half);
  const Vector v = psi.flatten();
  const double expected_flag = std::pow(norm(p_ill * v), 2);
  const double flag_error = std::abs(res.diagnostics.flag_probability - expected_flag);
  const double branch_error = distance(res.output.flatten(), block_swap(u_well) * v);
  const double flagged_error = distance(res.flagged.flatten(), p_ill * v);
  r.metric("flag_probability", res.diagnostics.flag_probability);
  r.metric("flag_probability_error", flag_error);
  r.metric("clear_branch_error", branch_error);
  r.metric("flagged_branch_error", flagged_error);
  r.verdict("flag_probability_within_1e-10", flag_error <= 1e-10);
  r.verdict("clear_branch_within_1e-9", branch_error <= 1e-9);
  r.verdict("flagged_branch_within_1e-9", flagged_error <= 1e-9);
}

void dme_slope_item(Rng& rng, Report& r) {
  const ProcrustesInstance inst = random_procrustes(3, 3, 4, false, rng);
  const DensityPair pair = reduced_density(inst);
  const ComplexMatrix h = embed(inst.target()).matrix() * (1.0 / static_cast<double>(inst.size()));
  std::vector<double> dts{1e-1, 1e-2, 1e-3};
  std::vector<double> errors;
  for (double dt : dts) {
    errors.push_back(spectral_norm(dme_step(pair, dt) - matrix_exp_hermitian(h, dt)));
  }
  const double slope = loglog_slope(dts, errors);
  r.metric("step_error_slope", slope);
  r.verdict("step_slope_2", std::abs(slope - 2.0) <= 0.2);

  std::vector<double> steps{25, 50, 100, 200};
  std::vector<double> global;
  for (double s : steps) {
    global.push_back(
        spectral_norm(effective_evolution_unitary(inst, 1.0, static_cast<std::size_t>(s)) -
                      matrix_exp_hermitian(embed(inst.target()).matrix(), 1.0)));
  }
  const double global_slope = loglog_slope(steps, global);
  r.metric("global_error_slope", global_slope);
  r.verdict("global_slope_minus_1", std::abs(global_slope + 1.0) <= 0.2);
}

void swap_channel_item(Rng& rng, Report& r) {
  const ComplexMatrix rho = random_density(3, rng);
  const ComplexMatrix sigma = random_density(3, rng);
  const ComplexMatrix commutator = rho * sigma - sigma * rho;
  std::vector<double> dts{1e-1, 1e-2, 1e-3};
  std::vector<double> errors;
  double trace_error = 0.0;
  for (double dt : dts) {
    const ComplexMatrix out = partial_swap_channel(rho, sigma, dt);
    trace_error = std::max(trace_error, std::abs(out.trace() - cplx(1.0, 0.0)));
    errors.push_back(frobenius_distance(out, sigma - commutator * cplx(0.0, dt)));
  }
  const double slope = loglog_slope(dts, errors);
  const double self = frobenius_distance(partial_swap_channel(rho, rho, 0.7), rho);
  r.metric("first_order_error_slope", slope);
  r.metric("max_trace_error", trace_error);
  r.metric("fixed_point_error", self);
  r.verdict("first_order_slope_2", std::abs(slope - 2.0) <= 0.2);
  r.verdict("trace_preserved", trace_error <= 1e-12);
  r.verdict("fixed_point", self <= 1e-12);
}

void procrustes_optimality_item(Rng& rng, Report& r) {
  bool minimal = true;
  bool maximal = true;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int inst_index = 0; inst_index < 3; ++inst_index) {
    const ProcrustesInstance inst = random_procrustes(3, 3, 5, false, rng);
    const ProcrustesSolution best = solve_procrustes_classical(inst);
    const double worst = procrustes_residual(inst, best.unitary * -1.0);
    for (int q = 0; q < 200; ++q) {
      const double res = procrustes_residual(inst, haar_unitary(3, rng));
      worst_gap = std::min(worst_gap, res - best.residual);
      if (res < best.residual - 1e-12) minimal = false;
      if (res > worst + 1e-12) maximal = false;
    }
  }
  r.metric("min_sampled_gap", worst_gap);
  r.verdict("classical_solution_minimal", minimal);
  r.verdict("negated_solution_maximal", maximal);
}

void procrustes_quantum_item(Rng& rng, double tol, Report& r) {
  double worst = 0.0;
  double identity_error = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const ProcrustesInstance inst = random_procrustes(3, 4, 5, false, rng);
    const DensityPair pair = reduced_density(inst);
    identity_error = std::max(
        identity_error,
        frobenius_distance(pair.rho - pair.rho_conjugated,
                           embed(inst.target()).matrix() * (1.0 / static_cast<double>(inst.size()))));
    const Vector chi = random_unit_vector(3, rng);
    const auto res = apply_procrustes_quantum(inst, chi, Mode::kExact, QpeConfig{}, 0);
    worst = std::max(worst, 1.0 - res.fidelity);
  }
  const ProcrustesInstance realizable = random_procrustes(3, 3, 3, true, rng);
  const double residual = solve_procrustes_classical(realizable).residual;
  r.metric("max_infidelity", worst);
  r.metric("density_identity_error", identity_error);
  r.metric("realizable_residual", residual);
  r.verdict("fidelity_within_tol", worst <= tol);
  r.verdict("density_identity_within_1e-12", identity_error <= 1e-12);
  r.verdict("realizable_residual_zero", residual <= 1e-12);
}

SplitHamiltonian random_split(std::size_t n, std::size_t m, Rng& rng) {
  return SplitHamiltonian(random_hermitian(n + m, rng), n);
}

void hsvt_isolation_item(Rng& rng, Report& r) {
  double worst = 0.0;
  double invariance = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const SplitHamiltonian m = random_split(2, 3, rng);
    worst = std::max(worst, (conjugation_difference(m) - embed(m.a_block()).matrix()).max_abs());
    const SplitHamiltonian bare(embed(m.a_block()).matrix(), 2);
    invariance = std::max(
        invariance, (conjugation_difference(m) - conjugation_difference(bare)).max_abs());
  }
  r.metric("max_isolation_error", worst);
  r.metric("max_block_invariance_error", invariance);
  r.verdict("isolation_within_1e-14", worst <= 1e-14);
  r.verdict("diagonal_blocks_eliminated", invariance <= 1e-14);
}

void hsvt_trotter_item(Rng& rng, Report& r) {
  const SplitHamiltonian m = random_split(2, 3, rng);
  const DilationVector psi = DilationVector::unflatten(random_unit_vector(5, rng), 2);
  std::vector<double> steps{25, 50, 100, 200};
  std::vector<double> errors;
  for (double s : steps) {
    errors.push_back(
        trotter_offdiagonal_evolution(m, 1.0, static_cast<std::size_t>(s), psi).operator_error);
  }
  const double slope = loglog_slope(steps, errors);
  const double ratio = errors[1] / errors[2];
  r.metric("error_slope", slope);
  r.metric("halving_ratio", ratio);
  r.verdict("slope_minus_1", std::abs(slope + 1.0) <= 0.2);
  r.verdict("ratio_in_range", ratio >= 1.7 && ratio <= 2.3);
}

void hsvt_transform_item(Rng& rng, double tol, Report& r) {
  const SplitHamiltonian m = random_split(3, 2, rng);
  const SplitHamiltonian bare(embed(m.a_block()).matrix(), 3);
  const DilationVector psi = DilationVector::unflatten(random_unit_vector(5, rng), 3);
  const ParityExtension ext{[](double x) { return std::tanh(x); }, Parity::kOdd, "tanh"};
  const PolarApplyResult a = hsvt_transform(m, ext, 1.3, psi, Mode::kExact);
  const PolarApplyResult b = hsvt_transform(bare, ext, 1.3, psi, Mode::kExact);
  const ComplexMatrix expected = matrix_exp_hermitian(parity_hamiltonian(m.a_block(), ext), 1.3);
  const double oracle = distance(a.output.flatten(), expected * psi.flatten());
  const double invariance = distance(a.output.flatten(), b.output.flatten());
  r.metric("oracle_error", oracle);
  r.metric("block_invariance_error", invariance);
  r.verdict("oracle_within_tol", oracle <= tol);
  r.verdict("invariance_within_tol", invariance <= tol);
}

void pgm_item(Rng& rng, Report& r) {
  double agreement = 0.0;
  double completeness = 0.0;
  double reprep = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.uniform() * 4.0);
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 4.0);
    const PGMInstance inst = random_pgm(d, n, rng);
    const ComplexMatrix rho = inst.mixed_on_span();
    const std::vector<double> direct = pgm_probabilities(inst, rho);
    const PGMPolarResult polar = pgm_via_polar(inst, rho, Mode::kExact);
    const std::vector<Vector> chi = pgm_vectors(inst);
    for (std::size_t j = 0; j < n; ++j) {
      agreement = std::max(agreement, std::abs(direct[j] - polar.probabilities[j]));
      reprep = std::max(reprep, distance(polar.reprepare(j), chi[j]));
    }
    completeness = std::max(completeness, completeness_residual(inst));
  }
  r.metric("max_path_disagreement", agreement);
  r.metric("max_completeness_residual", completeness);
  r.metric("max_repreparation_error", reprep);
  r.verdict("paths_agree_1e-8", agreement <= 1e-8);
  r.verdict("completeness_1e-10", completeness <= 1e-10);
  r.verdict("repreparation_1e-8", reprep <= 1e-8);
}

const std::vector<Item>& all_items() {
  static const std::vector<Item> items = {
      {"polar", "square", [](Rng& g, double t, Report& r) { polar_item(4, 4, g, t, r); }},
      {"polar", "wide", [](Rng& g, double t, Report& r) { polar_item(3, 5, g, t, r); }},
      {"polar", "tall", [](Rng& g, double t, Report& r) { polar_item(5, 3, g, t, r); }},
      {"qpe", "dyadic_b4", [](Rng& g, double t, Report& r) { qpe_item(4, g, t, r); }},
      {"qpe", "dyadic_b6", [](Rng& g, double t, Report& r) { qpe_item(6, g, t, r); }},
      {"scaling", "kappa2", [](Rng& g, double, Report& r) { scaling_item(2.0, g, r); }},
      {"scaling", "kappa8", [](Rng& g, double, Report& r) { scaling_item(8.0, g, r); }},
      {"evolve", "positive_factor", [](Rng& g, double, Report& r) { evolve_item(g, r); }},
      {"evolve", "generalized", [](Rng& g, double t, Report& r) { generalized_item(g, t, r); }},
      {"flag", "straddle", [](Rng& g, double, Report& r) { flag_item(g, r); }},
      {"trotter", "dme_order", [](Rng& g, double, Report& r) { dme_slope_item(g, r); }},
      {"trotter", "swap_channel", [](Rng& g, double, Report& r) { swap_channel_item(g, r); }},
      {"procrustes", "optimality",
       [](Rng& g, double, Report& r) { procrustes_optimality_item(g, r); }},
      {"procrustes", "quantum",
       [](Rng& g, double t, Report& r) { procrustes_quantum_item(g, t, r); }},
      {"hsvt", "isolation", [](Rng& g, double, Report& r) { hsvt_isolation_item(g, r); }},
      {"hsvt", "trotter", [](Rng& g, double, Report& r) { hsvt_trotter_item(g, r); }},
      {"hsvt", "transform", [](Rng& g, double t, Report& r) { hsvt_transform_item(g, t, r); }},
      {"pgm", "dual_path", [](Rng& g, double, Report& r) { pgm_item(g, r); }},
  };
  return items;
}

}  // namespace

PolarOracle polar_oracle(const ComplexMatrix& a, std::span<const cplx> psi,
                         std::optional<double> kappa_tilde) {
  const SVDResult s = svd(a);
  const std::size_t rank = s.rank();
  const double cut = kappa_tilde && rank > 0 ? s.singular_values.front() / *kappa_tilde : 0.0;
  ComplexMatrix u(a.rows(), a.cols());
  for (std::size_t j = 0; j < rank; ++j) {
    if (s.singular_values[j] < cut) continue;
    u += ComplexMatrix::outer(s.left_vectors.col(j), s.right_vectors.col(j));
  }
  const ComplexMatrix support = direct_sum(u.adjoint() * u, u * u.adjoint());
  const Vector rest = subtract(psi, support * psi);
  PolarOracle out;
  out.clear = block_swap(u) * psi;
  if (kappa_tilde) {
    out.flagged = rest;
  } else {
    out.clear = add(out.clear, rest);
    out.flagged = Vector(psi.size());
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::vector<std::string> verify_suites() {
  std::vector<std::string> names{"all"};
  for (const auto& item : all_items()) {
    if (std::find(names.begin(), names.end(), item.suite) == names.end()) {
      names.push_back(item.suite);
    }
  }
  return names;
}

std::vector<std::string> verify_items(const std::string& suite) {
  std::vector<std::string> names;
  for (const auto& item : all_items()) {
    if (suite == "all" || item.suite == suite) names.push_back(item.suite + "." + item.name);
  }
  return names;
}

Report run_verify(const VerifyOptions& options) {
  const auto suites = verify_suites();
  if (std::find(suites.begin(), suites.end(), options.suite) == suites.end()) {
    throw std::invalid_argument("unknown suite '" + options.suite + "'");
  }
  std::vector<std::size_t> selected;
  const auto& items = all_items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (options.suite == "all" || items[i].suite == options.suite) selected.push_back(i);
  }

  std::vector<std::optional<Report>> results(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < selected.size(); k = next++) {
      const Item& item = items[selected[k]];
      // Seeds follow the global item index, so a suite run reproduces the
      // same numbers as the corresponding part of an "all" run.
      Rng rng(derive_seed(options.seed, selected[k]));
      Report r(item.name);
      const auto start = std::chrono::steady_clock::now();
      try {
        item.run(rng, options.tolerance, r);
      } catch (const std::exception& e) {
        r.metric("error", e.what());
        r.verdict("completed", false);
      }
      r.timing("seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      results[k] = std::move(r);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, selected.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report report("verify");
  report.config("suite", options.suite);
  report.config("seed", std::to_string(options.seed));
  report.config("tolerance", options.tolerance);
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const Item& item = items[selected[k]];
    report.merge(item.suite + "." + item.name + ".", *results[k]);
  }
  return report;
}

}  // namespace qpolar::cli
