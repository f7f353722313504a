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

#include "qpolar/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpolar/cli/matrix_io.hpp"
#include "qpolar/cli/random.hpp"
#include "qpolar/cli/report.hpp"
#include "qpolar/cli/verify.hpp"
#include "qpolar/embedding.hpp"
#include "qpolar/hsvt.hpp"
#include "qpolar/linalg.hpp"
#include "qpolar/pgm.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/procrustes.hpp"

namespace qpolar::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string mode = "exact";
  std::string function;
  std::string suite = "all";
  std::string kind;
  std::string dims;
  unsigned bits = 8;
  double kappa_tilde = 0.0;
  bool has_kappa_tilde = false;
  double time = 1.0;
  std::size_t steps = 100;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::size_t split = 0;
  bool has_split = false;
  std::uint64_t shots = 0;
  bool realizable = false;
  bool unitary = false;
  bool no_timings = false;
};

[[noreturn]] void invalid(const std::string& what) { throw CliError(kExitInvalidValue, what); }

double env_double(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const double d = std::strtod(v, &end);
  if (*end != '\0' || !(d > 0.0) || !std::isfinite(d)) {
    invalid(std::string(name) + "='" + v + "' is not a positive number");
  }
  return d;
}

unsigned env_threads() {
  const char* v = std::getenv("QPOLAR_THREADS");
  if (v == nullptr || *v == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    invalid(std::string("QPOLAR_THREADS='") + v + "' is not a thread count in [1, 1024]");
  }
  return static_cast<unsigned>(n);
}

Mode parse_mode(const Options& o) { return o.mode == "qpe" ? Mode::kQpe : Mode::kExact; }

QpeConfig qpe_config(const Options& o) {
  QpeConfig c;
  c.bits = o.bits;
  if (o.has_kappa_tilde) {
    if (!(o.kappa_tilde > 1.0)) invalid("--kappa-tilde must be greater than 1");
    c.kappa_tilde = o.kappa_tilde;
  }
  return c;
}

ParityExtension parse_function(const std::string& text) {
  static const std::map<std::string, std::function<double(double)>> kFunctions = {
      {"identity", [](double x) { return x; }},
      {"square", [](double x) { return x * x; }},
      {"sqrt", [](double x) { return std::sqrt(x); }},
      {"sin", [](double x) { return std::sin(x); }},
      {"cos", [](double x) { return std::cos(x); }},
      {"tanh", [](double x) { return std::tanh(x); }},
      {"exp", [](double x) { return std::exp(x); }},
      {"one", [](double) { return 1.0; }},
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) invalid("--function expects name:parity, got '" + text + "'");
  const std::string name = text.substr(0, colon);
  const std::string parity = text.substr(colon + 1);
  const auto it = kFunctions.find(name);
  if (it == kFunctions.end()) {
    invalid("unknown function '" + name +
            "' (known: identity, square, sqrt, sin, cos, tanh, exp, one)");
  }
  if (parity != "odd" && parity != "even") invalid("parity must be odd or even, got '" + parity + "'");
  return {it->second, parity == "odd" ? Parity::kOdd : Parity::kEven, text};
}

void common_config(Report& r, const Options& o) {
  r.config("mode", o.mode);
  if (o.mode == "qpe") r.config("bits", std::to_string(o.bits));
  if (o.has_kappa_tilde) r.config("kappa_tilde", o.kappa_tilde);
  r.config("seed", std::to_string(o.seed));
  r.config("tolerance", o.tol);
}

void diagnostics_metrics(Report& r, const SimDiagnostics& d, Mode mode) {
  r.metric("flag_probability", d.flag_probability);
  if (mode == Mode::kQpe) {
    r.metric("fidelity_vs_exact", d.fidelity_vs_exact);
    r.metric("leakage", d.leakage_norm);
    r.metric("renormalization", d.renormalization);
  }
}

std::string compact(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows.dump();
}

// Overlaps of unit vectors can round a few ulps past one.
double fidelity_metric(double overlap_sum) { return std::min(1.0, overlap_sum); }

// Verdict on the polar-style outputs: oracle distance in exact mode, loss of
// fidelity against the exact transform in qpe mode.
void output_verdict(Report& r, Mode mode, double oracle_error, double fidelity, double tol) {
  if (mode == Mode::kExact) {
    r.verdict("oracle_error_within_tol", oracle_error <= tol);
  } else {
    r.verdict("fidelity_within_tol", 1.0 - fidelity <= tol);
  }
}

Report cmd_polar(const Options& o) {
  const ComplexMatrix a = read_matrix_file(o.input).matrix;
  const Mode mode = parse_mode(o);
  const QpeConfig config = qpe_config(o);
  Rng rng(o.seed);
  const DilationVector psi =
      DilationVector::unflatten(random_unit_vector(a.rows() + a.cols(), rng), a.cols());

  const PolarApplyResult res =
      config.kappa_tilde ? apply_polar_wellconditioned(a, psi, *config.kappa_tilde, mode, config)
                         : apply_polar_isometry(a, psi, mode, config);
  const PolarOracle oracle = polar_oracle(a, psi.flatten(), config.kappa_tilde);
  const double clear_error = distance(res.output.flatten(), oracle.clear);
  const double flag_error = distance(res.flagged.flatten(), oracle.flagged);
  const BlockHamiltonian h = embed(a);
  const DilationSpectrum spectrum = eigenstructure(h);
  const PolarFactors factors = classical_polar(a);
  const ComplexMatrix& u = factors.isometry;

  // A state injected into H_R comes out as U psi_R in H_L, plus whatever part
  // of psi_R lies in the kernel of A, which stays put. Likewise for H_L.
  const Vector psi_r = random_unit_vector(a.cols(), rng);
  const Vector psi_l = random_unit_vector(a.rows(), rng);
  const auto [r_top, r_bottom] =
      project_blocks(apply_polar_isometry(a, inject_right(h, psi_r), mode, config).output);
  const auto [l_top, l_bottom] =
      project_blocks(apply_polar_isometry(a, inject_left(h, psi_l), mode, config).output);
  const Vector u_psi_r = u * psi_r;
  const Vector u_adj_psi_l = u.adjoint() * psi_l;
  const double injection_error = std::max(
      std::hypot(distance(r_top, subtract(psi_r, u.adjoint() * u_psi_r)), distance(r_bottom, u_psi_r)),
      std::hypot(distance(l_bottom, subtract(psi_l, u * u_adj_psi_l)), distance(l_top, u_adj_psi_l)));

  Report r("polar");
  r.config("input", o.input);
  common_config(r, o);
  r.metric("rows", static_cast<double>(a.rows()));
  r.metric("cols", static_cast<double>(a.cols()));
  r.metric("scale", res.scale);
  r.metric("condition_number", res.kappa);
  r.metric("bits_required", static_cast<double>(res.bits_required));
  r.metric("dilation_pairs", static_cast<double>(spectrum.pairs.size()));
  r.metric("dilation_kernel_dim", static_cast<double>(spectrum.kernel.size()));
  if (u.rows() <= 8 && u.cols() <= 8) r.metric("isometry", compact(u));
  r.metric("factorization_error", frobenius_distance(u * factors.right_positive, a));
  r.metric("injection_error", injection_error);
  diagnostics_metrics(r, res.diagnostics, mode);
  r.metric("oracle_error", clear_error + flag_error);
  r.metric("fidelity", fidelity_metric(overlap(oracle.clear, res.output.flatten()) +
                                       overlap(oracle.flagged, res.flagged.flatten())));
  if (mode == Mode::kQpe) r.verdict("bits_resolve_condition_number", res.resolvable);
  output_verdict(r, mode, clear_error + flag_error, res.diagnostics.fidelity_vs_exact, o.tol);
  if (mode == Mode::kExact && !config.kappa_tilde) {
    r.verdict("injection_within_tol", injection_error <= o.tol);
  }
  return r;
}

Report cmd_evolve(const Options& o) {
  const ComplexMatrix a = read_matrix_file(o.input).matrix;
  const Mode mode = parse_mode(o);
  const QpeConfig config = qpe_config(o);
  Rng rng(o.seed);
  const DilationVector psi =
      DilationVector::unflatten(random_unit_vector(a.rows() + a.cols(), rng), a.cols());

  PolarApplyResult res;
  ComplexMatrix expected;
  std::optional<double> abs_error;
  if (o.function.empty()) {
    res = evolve_positive_factor(a, o.time, psi, mode, config);
    const PolarFactors f = classical_polar(a);
    const ComplexMatrix factors = direct_sum(f.right_positive, f.left_positive);
    // |H| of the dilation is B (+) B~, an independent route to the same generator.
    abs_error = frobenius_distance(closest_positive(embed(a).matrix()), factors);
    expected = direct_sum(matrix_exp_hermitian(f.right_positive, o.time),
                          matrix_exp_hermitian(f.left_positive, o.time));
  } else {
    const ParityExtension ext = parse_function(o.function);
    res = evolve_generalized(a, ext, o.time, psi, mode, config);
    expected = matrix_exp_hermitian(parity_hamiltonian(a, ext), o.time);
  }
  const Vector want = expected * psi.flatten();
  const double error = distance(res.output.flatten(), want);

  Report r("evolve");
  r.config("input", o.input);
  r.config("function", o.function.empty() ? std::string("abs") : o.function);
  r.config("time", o.time);
  common_config(r, o);
  r.metric("scale", res.scale);
  diagnostics_metrics(r, res.diagnostics, mode);
  r.metric("oracle_error", error);
  r.metric("fidelity", fidelity_metric(overlap(want, res.output.flatten())));
  if (abs_error) r.metric("dilation_abs_error", *abs_error);
  output_verdict(r, mode, error, res.diagnostics.fidelity_vs_exact, o.tol);
  if (abs_error) r.verdict("dilation_abs_within_tol", *abs_error <= o.tol);
  return r;
}

Report cmd_procrustes(const Options& o) {
  const ProcrustesInstance inst = read_procrustes_file(o.input);
  const Mode mode = parse_mode(o);
  const QpeConfig config = qpe_config(o);
  Rng rng(o.seed);
  const Vector chi = random_unit_vector(inst.input_dim(), rng);

  const ProcrustesSolution best = solve_procrustes_classical(inst);
  const DensityPair pair = reduced_density(inst);
  const double r_pairs = static_cast<double>(inst.size());
  const double identity_error = frobenius_distance(
      pair.rho - pair.rho_conjugated, embed(inst.target()).matrix() * (1.0 / r_pairs));
  const auto quantum = apply_procrustes_quantum(inst, chi, mode, config, o.steps);

  Report r("procrustes");
  r.config("input", o.input);
  r.config("steps", std::to_string(o.steps));
  r.config("time", o.time);
  common_config(r, o);
  r.metric("pairs", r_pairs);
  r.metric("input_dim", static_cast<double>(inst.input_dim()));
  r.metric("output_dim", static_cast<double>(inst.output_dim()));
  r.metric("residual", best.residual);
  r.metric("residual_negated", procrustes_residual(inst, best.unitary * -1.0));
  r.metric("pair_state_norm", norm(build_pair_state(inst)));
  r.metric("density_identity_error", identity_error);
  r.metric("fidelity", quantum.fidelity);
  diagnostics_metrics(r, quantum.diagnostics, mode);
  if (mode == Mode::kQpe) r.metric("trotter_unitary_error", quantum.trotter_error);

  const DilationVector probe =
      DilationVector::unflatten(random_unit_vector(inst.input_dim() + inst.output_dim(), rng),
                                inst.input_dim());
  for (std::size_t n = o.steps, k = 0; n >= 1 && k < 4; n /= 2, ++k) {
    const EvolutionReport ev = effective_hamiltonian_evolution(inst, o.time, n, probe);
    r.metric("trotter_curve.n" + std::to_string(n), ev.operator_error);
  }
  const std::size_t d = inst.input_dim() + inst.output_dim();
  if (d <= 8) {
    const double dt = 1e-3;
    const ComplexMatrix commutator =
        pair.rho * pair.rho_conjugated - pair.rho_conjugated * pair.rho;
    const ComplexMatrix swapped = partial_swap_channel(pair.rho, pair.rho_conjugated, dt);
    r.metric("swap_channel_first_order_error",
             frobenius_distance(swapped, pair.rho_conjugated - commutator * cplx(0.0, dt)));
  }
  r.verdict("density_identity_within_1e-10", identity_error <= 1e-10);
  r.verdict("fidelity_within_tol", 1.0 - quantum.fidelity <= o.tol);
  return r;
}

Report cmd_pgm(const Options& o) {
  const PGMFile file = read_pgm_file(o.input);
  const PGMInstance& inst = file.instance;
  const Mode mode = parse_mode(o);
  const QpeConfig config = qpe_config(o);
  const ComplexMatrix rho = file.rho ? *file.rho : inst.mixed_on_span();
  std::vector<double> direct;
  try {
    direct = pgm_probabilities(inst, rho);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitMalformedInput, o.input + ": " + e.what());
  }
  const PGMPolarResult polar = pgm_via_polar(inst, rho, mode, config);
  const std::vector<Vector> chi = pgm_vectors(inst);

  double disagreement = 0.0;
  double reprep = 0.0;
  Report r("pgm");
  r.config("input", o.input);
  r.config("rho", file.rho ? "file" : "maximally_mixed_on_span");
  common_config(r, o);
  r.metric("states", static_cast<double>(inst.count()));
  r.metric("dim", static_cast<double>(inst.dim()));
  for (std::size_t j = 0; j < inst.count(); ++j) {
    r.metric("p_direct." + std::to_string(j), direct[j]);
    r.metric("p_polar." + std::to_string(j), polar.probabilities[j]);
    disagreement = std::max(disagreement, std::abs(direct[j] - polar.probabilities[j]));
    reprep = std::max(reprep, distance(polar.reprepare(j), chi[j]));
  }
  const double completeness = completeness_residual(inst);
  r.metric("max_path_disagreement", disagreement);
  r.metric("completeness_residual", completeness);
  r.metric("repreparation_error", reprep);
  if (o.shots > 0) {
    r.config("shots", std::to_string(o.shots));
    const auto counts = sample_outcomes(direct, o.shots, o.seed);
    for (std::size_t j = 0; j < counts.size(); ++j) {
      r.metric("counts." + std::to_string(j), static_cast<double>(counts[j]));
    }
  }
  const double path_tol = mode == Mode::kExact ? 1e-8 : o.tol;
  r.verdict("paths_agree", disagreement <= path_tol);
  r.verdict("completeness_within_1e-10", completeness <= 1e-10);
  r.verdict("repreparation_agrees", reprep <= path_tol);
  return r;
}

Report cmd_hsvt(const Options& o) {
  const MatrixFile file = read_matrix_file(o.input);
  std::size_t split = 0;
  if (o.has_split) {
    split = o.split;
  } else if (file.split) {
    split = *file.split;
  } else {
    invalid("hsvt needs --split (or a \"split\" field in the matrix file)");
  }
  std::optional<SplitHamiltonian> m;
  try {
    m.emplace(file.matrix, split);
  } catch (const NotHermitianError& e) {
    throw CliError(kExitMalformedInput, o.input + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
  const Mode mode = parse_mode(o);
  const QpeConfig config = qpe_config(o);
  Rng rng(o.seed);
  const DilationVector psi =
      DilationVector::unflatten(random_unit_vector(file.matrix.rows(), rng), split);

  const ComplexMatrix isolated = isolate_offdiagonal(*m).matrix();
  const double isolation_error = (conjugation_difference(*m) - embed(m->a_block()).matrix()).max_abs();
  const TrotterReport trotter = trotter_offdiagonal_evolution(*m, o.time, o.steps, psi);

  PolarApplyResult res;
  Vector want;
  const std::string function = o.function.empty() ? "identity:odd" : o.function;
  if (function == "polar") {
    res = hsvt_polar(*m, psi, mode, config);
    want = polar_oracle(m->a_block(), psi.flatten()).clear;
  } else {
    const ParityExtension ext = parse_function(function);
    res = hsvt_transform(*m, ext, o.time, psi, mode, config);
    want = matrix_exp_hermitian(parity_hamiltonian(m->a_block(), ext), o.time) * psi.flatten();
  }
  const double error = distance(res.output.flatten(), want);

  Report r("hsvt");
  r.config("input", o.input);
  r.config("split", std::to_string(split));
  r.config("function", function);
  r.config("time", o.time);
  r.config("steps", std::to_string(o.steps));
  common_config(r, o);
  r.metric("isolation_error", isolation_error);
  r.metric("isolated_norm", spectral_norm(isolated));
  r.metric("trotter_state_error", trotter.state_error);
  r.metric("trotter_operator_error", trotter.operator_error);
  diagnostics_metrics(r, res.diagnostics, mode);
  r.metric("oracle_error", error);
  const double scale = std::max(1.0, file.matrix.max_abs());
  r.verdict("isolation_exact", isolation_error <= 1e-14 * scale);
  output_verdict(r, mode, error, res.diagnostics.fidelity_vs_exact, o.tol);
  return r;
}

Report cmd_verify(const Options& o) {
  VerifyOptions v;
  v.suite = o.suite;
  v.seed = o.seed;
  v.tolerance = o.tol;
  v.threads = env_threads();
  const auto start = std::chrono::steady_clock::now();
  Report r = run_verify(v);
  r.timing("total_seconds",
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return r;
}

std::vector<std::size_t> parse_dims(const std::string& dims, std::size_t count,
                                    const std::string& kind) {
  std::vector<std::size_t> out;
  std::stringstream ss(dims);
  std::string part;
  while (std::getline(ss, part, ',')) {
    char* end = nullptr;
    const long v = std::strtol(part.c_str(), &end, 10);
    if (part.empty() || *end != '\0' || v < 1 || v > 64) {
      invalid("--dims entry '" + part + "' is not an integer in [1, 64]");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.size() != count) {
    invalid("--dims for " + kind + " needs " + std::to_string(count) + " comma-separated values");
  }
  return out;
}

// Writes the instance; with no --output the instance itself is the output.
std::optional<Report> cmd_generate(const Options& o, std::ostream& out) {
  Rng rng(o.seed);
  std::string text;
  Report r("generate");
  r.config("kind", o.kind);
  r.config("dims", o.dims);
  r.config("seed", std::to_string(o.seed));
  if (o.kind == "matrix") {
    const auto d = parse_dims(o.dims, 2, o.kind);
    ComplexMatrix m;
    if (o.unitary) {
      if (d[0] != d[1]) invalid("--unitary needs square dims");
      m = haar_unitary(d[0], rng);
      r.verdict("is_unitary_1e-12", m.is_unitary(1e-12));
    } else {
      m = ginibre(d[0], d[1], rng);
    }
    text = matrix_json(m);
  } else if (o.kind == "procrustes") {
    const auto d = parse_dims(o.dims, 3, o.kind);
    if (o.realizable && d[0] != d[1]) invalid("--realizable needs equal input and output dims");
    const ProcrustesInstance inst = random_procrustes(d[0], d[1], d[2], o.realizable, rng);
    if (o.realizable) {
      const double residual = solve_procrustes_classical(inst).residual;
      r.metric("residual", residual);
      r.verdict("realizable_residual_zero", residual <= 1e-12);
    }
    text = procrustes_json(inst);
  } else if (o.kind == "pgm") {
    const auto d = parse_dims(o.dims, 2, o.kind);
    text = pgm_json(random_pgm(d[0], d[1], rng));
  } else if (o.kind == "split-hamiltonian") {
    const auto d = parse_dims(o.dims, 2, o.kind);
    text = matrix_json(random_hermitian(d[0] + d[1], rng), d[0]);
  } else {
    invalid("unknown kind '" + o.kind + "' (matrix, procrustes, pgm, split-hamiltonian)");
  }
  if (o.output.empty()) {
    out << text;
    return std::nullopt;
  }
  write_text_file(o.output, text);
  r.config("output", o.output);
  return r;
}

void add_run_options(CLI::App* sub, Options& o, bool needs_input) {
  auto* in = sub->add_option("--input", o.input, "Input file (JSON)");
  if (needs_input) in->required();
  sub->add_option("--mode", o.mode, "exact or qpe")->check(CLI::IsMember({"exact", "qpe"}));
  sub->add_option("--bits", o.bits, "Pointer register width b")->check(CLI::Range(1u, QpeConfig::kMaxBits));
  sub->add_option("--kappa-tilde", o.kappa_tilde, "Effective condition number (> 1)")
      ->each([&o](const std::string&) { o.has_kappa_tilde = true; });
  sub->add_option("--seed", o.seed, "Seed for random input states");
  sub->add_option("--output", o.output, "Write the report here instead of stdout");
  sub->add_option("--tol", o.tol, "Verdict tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

const std::vector<CommandCoverage>& coverage_table() {
  static const std::vector<CommandCoverage> table = {
      {"polar",
       {"embed", "eigenstructure", "inject_right", "inject_left", "project_blocks", "svd", "classical_polar",
        "frobenius_distance", "apply_polar_isometry",
        "apply_polar_wellconditioned", "exact_spectral_transform", "spectral_transform_qpe",
        "qpe_correlate", "apply_phase_function", "qpe_uncompute"}},
      {"evolve",
       {"evolve_positive_factor", "evolve_generalized", "parity_hamiltonian",
        "matrix_exp_hermitian", "hermitian_eig", "closest_positive"}},
      {"procrustes",
       {"build_pair_state", "reduced_density", "dme_step", "partial_swap_channel",
        "effective_hamiltonian_evolution", "solve_procrustes_classical", "procrustes_residual",
        "apply_procrustes_quantum"}},
      {"pgm",
       {"pgm_vectors", "pgm_probabilities", "pgm_via_polar", "completeness_residual",
        "sample_outcomes"}},
      {"hsvt",
       {"isolate_offdiagonal", "conjugation_difference", "trotter_offdiagonal_evolution",
        "hsvt_transform", "hsvt_polar"}},
      {"verify", {"run_verify"}},
      {"generate", {"generate_random_instance"}},
      {"*", {"parse_and_dispatch"}},
  };
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Simulator and verification suite for quantum polar decomposition", "qpolar"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--no-timings", o.no_timings, "Omit the [timings] section");

  auto* polar = app.add_subcommand("polar", "Apply the polar isometry of A to a random state");
  add_run_options(polar, o, true);

  auto* evolve = app.add_subcommand("evolve", "Evolve under |H| or a parity-extended f(H)");
  add_run_options(evolve, o, true);
  evolve->add_option("--time", o.time, "Evolution time");
  evolve->add_option("--function", o.function, "name:parity, e.g. sin:odd");

  auto* procrustes = app.add_subcommand("procrustes", "Solve a Procrustes instance both ways");
  add_run_options(procrustes, o, true);
  procrustes->add_option("--steps", o.steps, "Trotter steps")->check(CLI::Range(1, 1000000));
  procrustes->add_option("--time", o.time, "Time for the Trotter convergence curve");

  auto* pgm = app.add_subcommand("pgm", "Pretty good measurement, direct and via polar");
  add_run_options(pgm, o, true);
  pgm->add_option("--shots", o.shots, "Sample this many outcomes");

  auto* hsvt = app.add_subcommand("hsvt", "Singular value transformation of a split Hamiltonian");
  add_run_options(hsvt, o, true);
  hsvt->add_option("--split", o.split, "Dimension of the first block")
      ->each([&o](const std::string&) { o.has_split = true; });
  hsvt->add_option("--function", o.function, "name:parity or polar");
  hsvt->add_option("--time", o.time, "Evolution time");
  hsvt->add_option("--steps", o.steps, "Trotter steps")->check(CLI::Range(1, 1000000));

  auto* verify = app.add_subcommand("verify", "Run the seeded invariant battery");
  verify->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember(verify_suites()));
  verify->add_option("--seed", o.seed, "Base seed");
  verify->add_option("--tol", o.tol, "Oracle tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--output", o.output, "Write the report here instead of stdout");

  auto* generate = app.add_subcommand("generate", "Write a seeded random instance");
  generate->add_option("--kind", o.kind, "matrix, procrustes, pgm or split-hamiltonian")->required();
  generate->add_option("--dims", o.dims, "Comma-separated dimensions")->required();
  generate->add_option("--seed", o.seed, "Seed");
  generate->add_option("--output", o.output, "Instance path (stdout when omitted)");
  generate->add_flag("--realizable", o.realizable, "Procrustes pairs from one unitary");
  generate->add_flag("--unitary", o.unitary, "Haar unitary matrix");

  try {
    o.tol = env_double("QPOLAR_TOLERANCE", o.tol);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    const auto start = std::chrono::steady_clock::now();
    std::optional<Report> report;
    if (*polar) report = cmd_polar(o);
    if (*evolve) report = cmd_evolve(o);
    if (*procrustes) report = cmd_procrustes(o);
    if (*pgm) report = cmd_pgm(o);
    if (*hsvt) report = cmd_hsvt(o);
    if (*verify) report = cmd_verify(o);
    if (*generate) report = cmd_generate(o, out);
    if (!report) return kExitPass;
    if (!*verify) {
      report->timing("total_seconds",
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    const std::string text = report->render(!o.no_timings);
    if (!o.output.empty() && !*generate) {
      write_text_file(o.output, text);
    } else {
      out << text;
    }
    return report->passed() ? kExitPass : kExitVerdictFailure;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ConversionError& e) {
    err << "qpolar: " << e.what() << "\n";
    return kExitInvalidValue;
  } catch (const CLI::ValidationError& e) {
    err << "qpolar: " << e.what() << "\n";
    return kExitInvalidValue;
  } catch (const CLI::ParseError& e) {
    err << "qpolar: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CliError& e) {
    err << "qpolar: " << e.what() << "\n";
    return e.code();
  } catch (const std::invalid_argument& e) {
    err << "qpolar: " << e.what() << "\n";
    return kExitInvalidValue;
  } catch (const std::domain_error& e) {
    err << "qpolar: " << e.what() << "\n";
    return kExitInvalidValue;
  }
}

}  // namespace qpolar::cli
