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

// Spectral function application psi -> e^{-i f(H)} psi.
//
// Two routes:
//   * exact: eigendecompose H and phase each eigencomponent;
//   * qpe: simulate b-bit phase estimation on the joint (pointer x system)
//     statevector, phase each pointer code by f(decoded eigenvalue), and run
//     the estimation backwards. Nothing is sampled; the pointer is projected
//     back onto |0> at the end and the lost weight is reported as leakage.
//
// Pointer convention: W = exp(2 pi i H / (4 Lambda)), so eigenphases lie in
// [-1/4, 1/4] mod 1. Code c decodes as phi = c / 2^b and
//   lambda~ = 4 Lambda phi        for phi <  1/2
//   lambda~ = 4 Lambda (phi - 1)  for phi >= 1/2   (two's complement)

#ifndef QPOLAR_SPECTRAL_HPP_
#define QPOLAR_SPECTRAL_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpolar/matrix.hpp"

namespace qpolar {

enum class Mode { kExact, kQpe };

std::string_view mode_name(Mode mode);

class SpectralFunction {
 public:
  enum class Kind { kSignPhase, kAbsTimes, kLinear, kTabulated };

  /// f(x) = (pi/2)(1 - sign(x)), sign(0) = +1. With kappa_tilde set, inputs
  /// with |x| < 1/kappa_tilde are routed to the flag instead of phased.
  static SpectralFunction sign_phase(std::optional<double> kappa_tilde = std::nullopt);
  /// f(x) = |x| t
  static SpectralFunction abs_times(double t);
  /// f(x) = x t
  static SpectralFunction linear(double t);
  static SpectralFunction tabulated(std::function<double(double)> f,
                                    std::string label = "tabulated");
  /// f = 0
  static SpectralFunction zero() { return linear(0.0); }

  Kind kind() const { return kind_; }
  double time() const { return time_; }
  std::optional<double> kappa_tilde() const { return kappa_tilde_; }
  const std::string& label() const { return label_; }

  double operator()(double x) const;

  /// Sign function with kappa_tilde filled in from the fallback when it has
  /// none of its own; other kinds are returned unchanged.
  SpectralFunction resolved(std::optional<double> fallback_kappa) const;
  bool routes_to_flag(double x) const;

 private:
  SpectralFunction(Kind kind, double time, std::optional<double> kappa,
                   std::function<double(double)> f, std::string label);

  Kind kind_;
  double time_ = 0.0;
  std::optional<double> kappa_tilde_;
  std::function<double(double)> custom_;
  std::string label_;
};

struct QpeConfig {
  unsigned bits = 8;
  double eigenvalue_bound = 1.0;  // Lambda, with |H|_2 <= Lambda
  std::optional<double> kappa_tilde;

  /// Throws std::invalid_argument unless 1 <= bits <= kMaxBits, Lambda > 0,
  /// and kappa_tilde > 1 when present.
  void validate() const;
  std::size_t grid_size() const { return std::size_t{1} << bits; }
  /// Spacing 4 Lambda / 2^b of the decoded eigenvalue grid.
  double resolution() const;
  double decode(std::size_t code) const;
  /// Pointer code whose decoded value is closest to lambda (mod the grid).
  std::size_t nearest_code(double lambda) const;

  static constexpr unsigned kMaxBits = 16;
};

/// Joint statevector over (pointer code) x (system index), one matrix per
/// flag value; row c holds the system amplitudes attached to pointer code c.
struct PointerState {
  unsigned bits = 0;
  ComplexMatrix flag_clear;
  ComplexMatrix flag_raised;

  std::size_t system_dim() const { return flag_clear.cols(); }
  double norm_sq() const;
};

struct RoundingEntry {
  double eigenvalue;
  double grid_position;  // phi * 2^b, fractional
  std::size_t nearest_code;
  double decoded;
  double rounding_error;  // decoded - eigenvalue
};

struct SimDiagnostics {
  /// Weight (probability) left outside pointer code 0 after uncompute.
  double leakage_norm = 0.0;
  /// |<exact|simulated>| over the joint (flag x system) output.
  double fidelity_vs_exact = 1.0;
  /// Weight of the flag = 1 branch.
  double flag_probability = 0.0;
  /// Norm of the system state right after pointer projection, divided out.
  double renormalization = 1.0;
  /// Norm of the joint state before projection (1 for a unitary pipeline).
  double pipeline_norm = 1.0;
  std::vector<RoundingEntry> rounding;
};

/// System state split by flag value. For functions without a flag path the
/// raised branch is identically zero.
struct FlaggedState {
  Vector clear;
  Vector raised;

  double flag_probability() const;
  Vector combined() const;
};

struct SpectralOutput {
  FlaggedState state;
  SimDiagnostics diagnostics;
};

/// Source of the controlled powers W^(2^j) used by the pointer register.
class QpeUnitary {
 public:
  /// W = expm(2 pi i H / (4 Lambda)), computed without eigendecomposition.
  static QpeUnitary from_hamiltonian(const ComplexMatrix& h, const QpeConfig& config);
  /// Treats w as a black box; powers come from repeated squaring.
  static QpeUnitary from_unitary(ComplexMatrix w, unsigned bits);

  std::size_t dim() const { return powers_.front().rows(); }
  unsigned bits() const { return static_cast<unsigned>(powers_.size()); }
  const ComplexMatrix& power(unsigned j) const { return powers_.at(j); }
  const ComplexMatrix& inverse_power(unsigned j) const { return inverse_powers_.at(j); }

 private:
  std::vector<ComplexMatrix> powers_;
  std::vector<ComplexMatrix> inverse_powers_;
};

/// Sum_j e^{-i f(lambda_j)} <v_j|psi> v_j; eigenvalues within
/// kRankTolerance * |H|_2 of zero are taken as exactly zero.
FlaggedState exact_spectral_transform(const ComplexMatrix& h,
                                      const SpectralFunction& f,
                                      std::span<const cplx> psi);

/// Throws std::domain_error when a test vector v shows |Hv| > Lambda |v|.
void check_eigenvalue_bound(const ComplexMatrix& h, std::span<const cplx> psi,
                            const QpeConfig& config);

PointerState qpe_correlate(const ComplexMatrix& h, std::span<const cplx> psi,
                           const QpeConfig& config);
PointerState qpe_correlate(const QpeUnitary& w, std::span<const cplx> psi,
                           const QpeConfig& config);

PointerState apply_phase_function(PointerState state, const SpectralFunction& f,
                                  const QpeConfig& config);

struct UncomputeResult {
  FlaggedState state;
  SimDiagnostics diagnostics;  // fidelity and rounding left at defaults
};

UncomputeResult qpe_uncompute(PointerState state, const ComplexMatrix& h,
                              const QpeConfig& config);
UncomputeResult qpe_uncompute(PointerState state, const QpeUnitary& w,
                              const QpeConfig& config);

/// Full pipeline with fidelity against exact_spectral_transform.
SpectralOutput spectral_transform_qpe(const ComplexMatrix& h, const SpectralFunction& f,
                                      std::span<const cplx> psi, const QpeConfig& config);
/// Same with an externally supplied W; reference_h only feeds the fidelity
/// and rounding diagnostics.
SpectralOutput spectral_transform_qpe(const QpeUnitary& w, const ComplexMatrix& reference_h,
                                      const SpectralFunction& f, std::span<const cplx> psi,
                                      const QpeConfig& config);

/// |<a|b>| summed coherently over both flag branches.
double flagged_fidelity(const FlaggedState& a, const FlaggedState& b);

}  // namespace qpolar

#endif  // QPOLAR_SPECTRAL_HPP_
