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

#include "qpolar/polar.hpp"

#include <cmath>
#include <stdexcept>

#include "qpolar/linalg.hpp"

namespace qpolar {

namespace {

struct Normalized {
  ComplexMatrix h;  // embed(A / scale)
  double scale = 1.0;
  double kappa = 1.0;
};

Normalized normalize(const ComplexMatrix& a) {
  const SVDResult s = svd(a);
  Normalized out;
  const std::size_t rank = s.rank();
  if (rank > 0) {
    out.scale = s.singular_values.front();
    out.kappa = s.singular_values.front() / s.singular_values[rank - 1];
  }
  out.h = embed(a * (1.0 / out.scale)).matrix();
  return out;
}

PolarApplyResult run(const ComplexMatrix& a, const DilationVector& psi,
                     const std::function<SpectralFunction(double)>& make_function,
                     Mode mode, QpeConfig config) {
  if (psi.top.size() != a.cols() || psi.bottom.size() != a.rows()) {
    throw std::invalid_argument("dilation vector blocks (" + std::to_string(psi.top.size()) +
                                ", " + std::to_string(psi.bottom.size()) +
                                ") do not match A of shape " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()));
  }
  const Normalized nz = normalize(a);
  const SpectralFunction f = make_function(nz.scale);
  const Vector input = psi.flatten();
  const double input_norm = norm(input);
  if (input_norm == 0.0) throw std::invalid_argument("input state is zero");
  const Vector unit = scaled(input, 1.0 / input_norm);

  PolarApplyResult result;
  result.mode = mode;
  result.scale = nz.scale;
  result.kappa = nz.kappa;
  const double needed = std::log2(4.0 * config.eigenvalue_bound * nz.kappa);
  result.bits_required = static_cast<unsigned>(std::max(1.0, std::ceil(needed - 1e-12)));

  FlaggedState state;
  if (mode == Mode::kExact) {
    state = exact_spectral_transform(nz.h, f, unit);
    result.diagnostics.flag_probability = state.flag_probability();
  } else {
    config.validate();
    SpectralOutput out = spectral_transform_qpe(nz.h, f, unit, config);
    state = std::move(out.state);
    result.diagnostics = std::move(out.diagnostics);
    result.resolvable = config.bits >= result.bits_required;
  }
  const std::size_t n = a.cols();
  result.output = DilationVector::unflatten(scaled(state.clear, input_norm), n);
  result.flagged = DilationVector::unflatten(scaled(state.raised, input_norm), n);
  return result;
}

}  // namespace

std::string_view parity_name(Parity parity) {
  return parity == Parity::kOdd ? "odd" : "even";
}

double ParityExtension::operator()(double x) const {
  if (x > 0.0) return base_function(x);
  if (x < 0.0) return parity == Parity::kOdd ? -base_function(-x) : base_function(-x);
  return parity == Parity::kOdd ? 0.0 : base_function(0.0);
}

PolarApplyResult apply_polar_isometry(const ComplexMatrix& a, const DilationVector& psi,
                                      Mode mode, const QpeConfig& config) {
  QpeConfig plain = config;
  plain.kappa_tilde.reset();
  return run(a, psi, [](double) { return SpectralFunction::sign_phase(); }, mode, plain);
}

PolarApplyResult apply_polar_wellconditioned(const ComplexMatrix& a,
                                             const DilationVector& psi, double kappa_tilde,
                                             Mode mode, const QpeConfig& config) {
  if (!(kappa_tilde > 1.0)) throw std::invalid_argument("kappa_tilde must exceed 1");
  QpeConfig flagged = config;
  flagged.kappa_tilde = kappa_tilde;
  return run(a, psi,
             [kappa_tilde](double) { return SpectralFunction::sign_phase(kappa_tilde); },
             mode, flagged);
}

PolarApplyResult evolve_positive_factor(const ComplexMatrix& a, double t,
                                        const DilationVector& psi, Mode mode,
                                        const QpeConfig& config) {
  // |H/s| (s t) = |H| t
  return run(a, psi, [t](double s) { return SpectralFunction::abs_times(s * t); }, mode,
             config);
}

PolarApplyResult evolve_generalized(const ComplexMatrix& a, const ParityExtension& ext,
                                    double t, const DilationVector& psi, Mode mode,
                                    const QpeConfig& config) {
  if (!ext.base_function) throw std::invalid_argument("parity extension has no function");
  return run(
      a, psi,
      [&ext, t](double s) {
        return SpectralFunction::tabulated([ext, s, t](double x) { return ext(s * x) * t; },
                                           ext.label);
      },
      mode, config);
}

ComplexMatrix parity_hamiltonian(const ComplexMatrix& a, const ParityExtension& ext) {
  const SVDResult s = svd(a);
  const std::size_t rank = s.rank();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (ext.parity == Parity::kOdd) {
    ComplexMatrix f(m, n);
    for (std::size_t j = 0; j < rank; ++j) {
      f += ext.base_function(s.singular_values[j]) *
           ComplexMatrix::outer(s.left_vectors.col(j), s.right_vectors.col(j));
    }
    return block_swap(f);
  }
  const double f0 = ext.base_function(0.0);
  ComplexMatrix top = f0 * ComplexMatrix::identity(n);
  ComplexMatrix bottom = f0 * ComplexMatrix::identity(m);
  for (std::size_t j = 0; j < rank; ++j) {
    const double shift = ext.base_function(s.singular_values[j]) - f0;
    const Vector r = s.right_vectors.col(j);
    const Vector l = s.left_vectors.col(j);
    top += shift * ComplexMatrix::outer(r, r);
    bottom += shift * ComplexMatrix::outer(l, l);
  }
  return direct_sum(top, bottom);
}

}  // namespace qpolar
