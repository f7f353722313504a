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

#include "qpolar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qpolar/kernels.hpp"
#include "qpolar/linalg.hpp"

namespace qpolar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPowerIterations = 40;

void require_state(const ComplexMatrix& h, std::span<const cplx> psi) {
  if (!h.is_square()) throw std::invalid_argument("spectral transform: H is not square");
  if (psi.size() != h.rows()) {
    throw std::invalid_argument("spectral transform: state has dimension " +
                                std::to_string(psi.size()) + ", H has " +
                                std::to_string(h.rows()));
  }
}

// F[c][k] = exp(sign * 2 pi i c k / K) / sqrt(K); sign = -1 is the inverse
// transform applied after the controlled powers.
ComplexMatrix fourier_matrix(unsigned bits, int sign) {
  const std::size_t k_size = std::size_t{1} << bits;
  std::vector<cplx> twiddle(k_size);
  for (std::size_t m = 0; m < k_size; ++m) {
    twiddle[m] = std::polar(1.0 / std::sqrt(static_cast<double>(k_size)),
                            sign * 2.0 * kPi * static_cast<double>(m) /
                                static_cast<double>(k_size));
  }
  ComplexMatrix f(k_size, k_size);
  for (std::size_t c = 0; c < k_size; ++c) {
    for (std::size_t k = 0; k < k_size; ++k) f(c, k) = twiddle[(c * k) & (k_size - 1)];
  }
  return f;
}

// Applies W^(2^j) (or its inverse) to every pointer row whose bit j is set.
void controlled_powers(ComplexMatrix& rows, const QpeUnitary& w, bool inverse) {
  const std::size_t n = rows.cols();
  Vector scratch(n);
  for (unsigned j = 0; j < w.bits(); ++j) {
    const ComplexMatrix& p = inverse ? w.inverse_power(j) : w.power(j);
    const std::size_t mask = std::size_t{1} << j;
    for (std::size_t code = 0; code < rows.rows(); ++code) {
      if (!(code & mask)) continue;
      auto row = rows.row(code);
      kernels::gemv(n, n, p.entries(), row, scratch);
      std::copy(scratch.begin(), scratch.end(), row.begin());
    }
  }
}

std::vector<RoundingEntry> rounding_table(const ComplexMatrix& h, const QpeConfig& config) {
  const EigenDecomposition e = hermitian_eig(h);
  std::vector<RoundingEntry> table;
  const double k_size = static_cast<double>(config.grid_size());
  for (double lambda : e.values) {
    double phi = lambda / (4.0 * config.eigenvalue_bound);
    phi -= std::floor(phi);
    const std::size_t code = config.nearest_code(lambda);
    const double decoded = config.decode(code);
    table.push_back({lambda, phi * k_size, code, decoded, decoded - lambda});
  }
  return table;
}

}  // namespace

std::string_view mode_name(Mode mode) { return mode == Mode::kExact ? "exact" : "qpe"; }

SpectralFunction::SpectralFunction(Kind kind, double time, std::optional<double> kappa,
                                   std::function<double(double)> f, std::string label)
    : kind_(kind), time_(time), kappa_tilde_(kappa), custom_(std::move(f)),
      label_(std::move(label)) {}

SpectralFunction SpectralFunction::sign_phase(std::optional<double> kappa_tilde) {
  if (kappa_tilde && !(*kappa_tilde > 1.0)) {
    throw std::invalid_argument("kappa_tilde must exceed 1");
  }
  return SpectralFunction(Kind::kSignPhase, 0.0, kappa_tilde, nullptr, "sign");
}

SpectralFunction SpectralFunction::abs_times(double t) {
  return SpectralFunction(Kind::kAbsTimes, t, std::nullopt, nullptr, "abs");
}

SpectralFunction SpectralFunction::linear(double t) {
  return SpectralFunction(Kind::kLinear, t, std::nullopt, nullptr, "linear");
}

SpectralFunction SpectralFunction::tabulated(std::function<double(double)> f,
                                             std::string label) {
  if (!f) throw std::invalid_argument("tabulated spectral function is empty");
  return SpectralFunction(Kind::kTabulated, 0.0, std::nullopt, std::move(f),
                          std::move(label));
}

double SpectralFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::kSignPhase:
      return x < 0.0 ? kPi : 0.0;
    case Kind::kAbsTimes:
      return std::abs(x) * time_;
    case Kind::kLinear:
      return x * time_;
    case Kind::kTabulated:
      return custom_(x);
  }
  return 0.0;
}

SpectralFunction SpectralFunction::resolved(std::optional<double> fallback_kappa) const {
  if (kind_ != Kind::kSignPhase || kappa_tilde_ || !fallback_kappa) return *this;
  return sign_phase(fallback_kappa);
}

bool SpectralFunction::routes_to_flag(double x) const {
  return kind_ == Kind::kSignPhase && kappa_tilde_ && std::abs(x) < 1.0 / *kappa_tilde_;
}

void QpeConfig::validate() const {
  if (bits < 1 || bits > kMaxBits) {
    throw std::invalid_argument("bits must lie in [1, " + std::to_string(kMaxBits) +
                                "], got " + std::to_string(bits));
  }
  if (!(eigenvalue_bound > 0.0) || !std::isfinite(eigenvalue_bound)) {
    throw std::invalid_argument("eigenvalue bound must be positive");
  }
  if (kappa_tilde && !(*kappa_tilde > 1.0)) {
    throw std::invalid_argument("kappa_tilde must exceed 1");
  }
}

double QpeConfig::resolution() const {
  return 4.0 * eigenvalue_bound / static_cast<double>(grid_size());
}

double QpeConfig::decode(std::size_t code) const {
  const double phi = static_cast<double>(code) / static_cast<double>(grid_size());
  return phi < 0.5 ? 4.0 * eigenvalue_bound * phi : 4.0 * eigenvalue_bound * (phi - 1.0);
}

std::size_t QpeConfig::nearest_code(double lambda) const {
  double phi = lambda / (4.0 * eigenvalue_bound);
  phi -= std::floor(phi);
  const auto k_size = static_cast<double>(grid_size());
  return static_cast<std::size_t>(std::llround(phi * k_size)) & (grid_size() - 1);
}

double PointerState::norm_sq() const {
  return kernels::norm_sq(flag_clear.entries()) + kernels::norm_sq(flag_raised.entries());
}

double FlaggedState::flag_probability() const { return kernels::norm_sq(raised); }

Vector FlaggedState::combined() const { return add(clear, raised); }

double flagged_fidelity(const FlaggedState& a, const FlaggedState& b) {
  return std::abs(dot(a.clear, b.clear) + dot(a.raised, b.raised));
}

QpeUnitary QpeUnitary::from_hamiltonian(const ComplexMatrix& h, const QpeConfig& config) {
  config.validate();
  const cplx scale(0.0, 2.0 * kPi / (4.0 * config.eigenvalue_bound));
  return from_unitary(expm(h * scale), config.bits);
}

QpeUnitary QpeUnitary::from_unitary(ComplexMatrix w, unsigned bits) {
  if (!w.is_square() || w.empty()) throw std::invalid_argument("QPE unitary must be square");
  if (bits < 1) throw std::invalid_argument("QPE needs at least one pointer bit");
  QpeUnitary q;
  q.powers_.reserve(bits);
  q.powers_.push_back(std::move(w));
  for (unsigned j = 1; j < bits; ++j) q.powers_.push_back(q.powers_.back() * q.powers_.back());
  for (const auto& p : q.powers_) q.inverse_powers_.push_back(p.adjoint());
  return q;
}

FlaggedState exact_spectral_transform(const ComplexMatrix& h, const SpectralFunction& f,
                                      std::span<const cplx> psi) {
  require_state(h, psi);
  const EigenDecomposition e = hermitian_eig(h);
  double scale = 0.0;
  for (double v : e.values) scale = std::max(scale, std::abs(v));
  const double zero_cut = kRankTolerance * scale;

  const std::size_t n = h.rows();
  FlaggedState out{Vector(n, 0.0), Vector(n, 0.0)};
  const ComplexMatrix vh = e.vectors.adjoint();
  const Vector coeffs = vh * psi;
  for (std::size_t j = 0; j < n; ++j) {
    const double lambda = std::abs(e.values[j]) <= zero_cut ? 0.0 : e.values[j];
    const Vector v = e.vectors.col(j);
    if (f.routes_to_flag(lambda)) {
      kernels::axpy(coeffs[j], v, out.raised);
    } else {
      kernels::axpy(coeffs[j] * std::polar(1.0, -f(lambda)), v, out.clear);
    }
  }
  return out;
}

void check_eigenvalue_bound(const ComplexMatrix& h, std::span<const cplx> psi,
                            const QpeConfig& config) {
  const double bound = config.eigenvalue_bound * (1.0 + 1e-9);
  auto check = [&](std::span<const cplx> v) {
    const double nv = norm(v);
    if (nv == 0.0) return;
    const double nhv = norm(h * v);
    if (nhv > bound * nv) {
      throw std::domain_error("eigenvalue bound violated: |Hv|/|v| = " +
                              std::to_string(nhv / nv) + " > Lambda = " +
                              std::to_string(config.eigenvalue_bound));
    }
  };
  const std::size_t n = h.rows();
  check(psi);
  for (std::size_t i = 0; i < n; ++i) check(basis_vector(n, i));
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = cplx(1.0 / (1.0 + i), 0.5 / (2.0 + i));
  for (int it = 0; it < kPowerIterations; ++it) {
    check(v);
    Vector hv = h * v;
    const double nh = norm(hv);
    if (nh == 0.0) break;
    v = scaled(hv, 1.0 / nh);
  }
}

PointerState qpe_correlate(const ComplexMatrix& h, std::span<const cplx> psi,
                           const QpeConfig& config) {
  config.validate();
  require_state(h, psi);
  check_eigenvalue_bound(h, psi, config);
  return qpe_correlate(QpeUnitary::from_hamiltonian(h, config), psi, config);
}

PointerState qpe_correlate(const QpeUnitary& w, std::span<const cplx> psi,
                           const QpeConfig& config) {
  config.validate();
  if (w.bits() != config.bits) throw std::invalid_argument("QPE unitary built for other width");
  if (psi.size() != w.dim()) throw std::invalid_argument("QPE: state dimension mismatch");
  const std::size_t k_size = config.grid_size();
  const std::size_t n = psi.size();

  // Hadamards on the pointer: every code carries psi / sqrt(K).
  ComplexMatrix rows(k_size, n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(k_size));
  for (std::size_t c = 0; c < k_size; ++c) {
    for (std::size_t i = 0; i < n; ++i) rows(c, i) = psi[i] * amp;
  }
  controlled_powers(rows, w, /*inverse=*/false);

  PointerState state;
  state.bits = config.bits;
  state.flag_clear = fourier_matrix(config.bits, -1) * rows;
  state.flag_raised = ComplexMatrix(k_size, n);
  return state;
}

PointerState apply_phase_function(PointerState state, const SpectralFunction& f,
                                  const QpeConfig& config) {
  if (state.bits != config.bits) throw std::invalid_argument("pointer width mismatch");
  const SpectralFunction g = f.resolved(config.kappa_tilde);
  for (std::size_t code = 0; code < config.grid_size(); ++code) {
    const double lambda = config.decode(code);
    auto clear = state.flag_clear.row(code);
    if (g.routes_to_flag(lambda)) {
      auto raised = state.flag_raised.row(code);
      for (std::size_t i = 0; i < clear.size(); ++i) {
        raised[i] += clear[i];
        clear[i] = 0.0;
      }
    } else {
      const cplx phase = std::polar(1.0, -g(lambda));
      for (auto& e : clear) e *= phase;
    }
  }
  return state;
}

UncomputeResult qpe_uncompute(PointerState state, const ComplexMatrix& h,
                              const QpeConfig& config) {
  config.validate();
  return qpe_uncompute(std::move(state), QpeUnitary::from_hamiltonian(h, config), config);
}

UncomputeResult qpe_uncompute(PointerState state, const QpeUnitary& w,
                              const QpeConfig& config) {
  if (state.bits != config.bits || w.bits() != config.bits) {
    throw std::invalid_argument("pointer width mismatch");
  }
  const std::size_t n = state.system_dim();
  const std::size_t k_size = config.grid_size();
  const ComplexMatrix forward = fourier_matrix(config.bits, +1);

  UncomputeResult out;
  const double total = state.norm_sq();
  out.diagnostics.pipeline_norm = std::sqrt(total);

  // Undo the inverse Fourier transform and the controlled powers on each flag
  // branch, then project the pointer onto H^{(x)b}|0>.
  auto unwind = [&](const ComplexMatrix& branch) {
    ComplexMatrix rows = forward * branch;
    controlled_powers(rows, w, /*inverse=*/true);
    Vector projected(n, 0.0);
    const double amp = 1.0 / std::sqrt(static_cast<double>(k_size));
    for (std::size_t c = 0; c < k_size; ++c) kernels::axpy(amp, rows.row(c), projected);
    return projected;
  };
  out.state.clear = unwind(state.flag_clear);
  out.state.raised = unwind(state.flag_raised);

  const double kept = kernels::norm_sq(out.state.clear) + kernels::norm_sq(out.state.raised);
  out.diagnostics.leakage_norm = std::clamp(total - kept, 0.0, 1.0);
  out.diagnostics.renormalization = std::sqrt(kept);
  if (kept > 0.0) {
    const double inv = 1.0 / std::sqrt(kept) * std::sqrt(total);
    for (auto& e : out.state.clear) e *= inv;
    for (auto& e : out.state.raised) e *= inv;
  }
  // Reported for the returned state, so it pairs with |clear|^2 to one.
  out.diagnostics.flag_probability =
      total > 0.0 ? kernels::norm_sq(out.state.raised) / total : 0.0;
  return out;
}

SpectralOutput spectral_transform_qpe(const ComplexMatrix& h, const SpectralFunction& f,
                                      std::span<const cplx> psi, const QpeConfig& config) {
  config.validate();
  require_state(h, psi);
  check_eigenvalue_bound(h, psi, config);
  return spectral_transform_qpe(QpeUnitary::from_hamiltonian(h, config), h, f, psi, config);
}

SpectralOutput spectral_transform_qpe(const QpeUnitary& w, const ComplexMatrix& reference_h,
                                      const SpectralFunction& f, std::span<const cplx> psi,
                                      const QpeConfig& config) {
  require_state(reference_h, psi);
  PointerState state = qpe_correlate(w, psi, config);
  state = apply_phase_function(std::move(state), f, config);
  UncomputeResult undone = qpe_uncompute(std::move(state), w, config);

  SpectralOutput out{std::move(undone.state), std::move(undone.diagnostics)};
  const FlaggedState exact =
      exact_spectral_transform(reference_h, f.resolved(config.kappa_tilde), psi);
  const double scale = kernels::norm_sq(psi);
  out.diagnostics.fidelity_vs_exact =
      scale > 0.0 ? std::min(1.0, flagged_fidelity(exact, out.state) / scale) : 1.0;
  out.diagnostics.rounding = rounding_table(reference_h, config);
  return out;
}

}  // namespace qpolar
