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

#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"

namespace qpolar {
namespace {

using testing::max_entry_diff;
using testing::Rng;

const ComplexMatrix kPauliX{{0.0, 1.0}, {1.0, 0.0}};

QpeConfig config_with_bits(unsigned bits) {
  QpeConfig c;
  c.bits = bits;
  return c;
}

// Probability mass of the clear pointer register at one code.
double code_weight(const PointerState& s, std::size_t code) {
  double w = 0.0;
  for (const cplx& z : s.flag_clear.row(code)) w += std::norm(z);
  return w;
}

// Hermitian matrix with eigenvalues exactly on the b-bit grid.
ComplexMatrix dyadic_hermitian(std::size_t n, unsigned bits, Rng& rng) {
  const QpeConfig c = config_with_bits(bits);
  // Grid points k * 4 / 2^b with |k| <= 2^b / 4 stay inside [-Lambda, Lambda].
  const auto quarter = static_cast<long>(c.grid_size() / 4);
  std::vector<double> values(n);
  for (double& v : values) {
    const long k = static_cast<long>(rng.uniform() * static_cast<double>(2 * quarter + 1)) - quarter;
    v = static_cast<double>(k) * c.resolution();
  }
  const ComplexMatrix q = cli::haar_unitary(n, rng);
  return q * ComplexMatrix::diagonal(values) * q.adjoint();
}

// ---- SpectralFunction ----

TEST(SpectralFunction, SignPhaseValues) {
  const SpectralFunction f = SpectralFunction::sign_phase();
  EXPECT_EQ(f(1.0), 0.0);
  EXPECT_EQ(f(0.0), 0.0);
  EXPECT_DOUBLE_EQ(f(-0.3), std::numbers::pi);
  EXPECT_FALSE(f.routes_to_flag(0.0));
}

TEST(SpectralFunction, FlagRouting) {
  const SpectralFunction f = SpectralFunction::sign_phase(4.0);
  EXPECT_TRUE(f.routes_to_flag(0.0));
  EXPECT_TRUE(f.routes_to_flag(-0.2));
  EXPECT_FALSE(f.routes_to_flag(0.25));
  EXPECT_FALSE(f.routes_to_flag(-0.5));
  EXPECT_THROW(SpectralFunction::sign_phase(1.0), std::invalid_argument);
}

TEST(SpectralFunction, ResolvedFillsKappaOnlyForSign) {
  EXPECT_EQ(SpectralFunction::sign_phase().resolved(3.0).kappa_tilde(), 3.0);
  EXPECT_EQ(SpectralFunction::sign_phase(5.0).resolved(3.0).kappa_tilde(), 5.0);
  EXPECT_FALSE(SpectralFunction::linear(1.0).resolved(3.0).kappa_tilde().has_value());
}

TEST(SpectralFunction, OtherKinds) {
  EXPECT_DOUBLE_EQ(SpectralFunction::abs_times(2.0)(-0.5), 1.0);
  EXPECT_DOUBLE_EQ(SpectralFunction::linear(2.0)(-0.5), -1.0);
  EXPECT_DOUBLE_EQ(SpectralFunction::tabulated([](double x) { return x * x; })(3.0), 9.0);
  EXPECT_EQ(SpectralFunction::zero()(0.7), 0.0);
}

// ---- QpeConfig ----

TEST(QpeConfig, Validation) {
  QpeConfig c;
  EXPECT_NO_THROW(c.validate());
  c.bits = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.bits = QpeConfig::kMaxBits + 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = QpeConfig{};
  c.eigenvalue_bound = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = QpeConfig{};
  c.kappa_tilde = 0.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(QpeConfig, TwosComplementDecoding) {
  const QpeConfig c = config_with_bits(3);
  EXPECT_EQ(c.decode(0), 0.0);
  EXPECT_EQ(c.decode(2), 1.0);
  EXPECT_EQ(c.decode(3), 1.5);
  EXPECT_EQ(c.decode(4), -2.0);
  EXPECT_EQ(c.decode(6), -1.0);
  EXPECT_EQ(c.resolution(), 0.5);
  EXPECT_EQ(c.nearest_code(1.0), 2u);
  EXPECT_EQ(c.nearest_code(-1.0), 6u);
  EXPECT_EQ(c.nearest_code(0.2), 0u);
}

// ---- exact_spectral_transform ----

TEST(ExactTransform, LinearMatchesEvolution) {
  Rng rng(1);
  const ComplexMatrix h = cli::random_hermitian(5, rng);
  const Vector psi = cli::random_unit_vector(5, rng);
  for (double t : {0.3, 2.0}) {
    const FlaggedState out = exact_spectral_transform(h, SpectralFunction::linear(t), psi);
    EXPECT_LE(distance(out.clear, matrix_exp_hermitian(h, t) * psi), 1e-12);
    EXPECT_NEAR(norm(out.clear), 1.0, 1e-12);
  }
}

TEST(ExactTransform, ZeroFunctionIsIdentity) {
  Rng rng(2);
  const ComplexMatrix h = cli::random_hermitian(4, rng);
  const Vector psi = cli::random_unit_vector(4, rng);
  EXPECT_LE(distance(exact_spectral_transform(h, SpectralFunction::zero(), psi).clear, psi),
            1e-12);
}

TEST(ExactTransform, SignFlipOnPauliX) {
  const FlaggedState out =
      exact_spectral_transform(kPauliX, SpectralFunction::sign_phase(), Vector{1.0, 0.0});
  EXPECT_LE(max_entry_diff(out.clear, Vector{0.0, 1.0}), 1e-15);
  EXPECT_EQ(out.flag_probability(), 0.0);
}

TEST(ExactTransform, RejectsNonHermitian) {
  EXPECT_THROW(exact_spectral_transform(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}},
                                        SpectralFunction::zero(), Vector{1.0, 0.0}),
               NotHermitianError);
}

// ---- qpe stages ----

TEST(QpeCorrelate, ZeroHamiltonianReadsCodeZero) {
  const PointerState s = qpe_correlate(ComplexMatrix(2, 2), Vector{0.6, 0.8}, config_with_bits(4));
  EXPECT_NEAR(code_weight(s, 0), 1.0, 1e-14);
}

TEST(QpeCorrelate, IdentityAndMinusIdentityCodes) {
  const QpeConfig c = config_with_bits(3);
  const Vector psi{1.0, 0.0};
  const PointerState plus = qpe_correlate(ComplexMatrix::identity(2), psi, c);
  EXPECT_NEAR(code_weight(plus, 0b010), 1.0, 1e-14);
  const PointerState minus = qpe_correlate(ComplexMatrix::identity(2) * -1.0, psi, c);
  EXPECT_NEAR(code_weight(minus, 0b110), 1.0, 1e-14);
}

TEST(QpeCorrelate, BoundViolationThrows) {
  EXPECT_THROW(qpe_correlate(ComplexMatrix::identity(2) * 2.0, Vector{1.0, 0.0}, config_with_bits(4)),
               std::domain_error);
}

TEST(ApplyPhaseFunction, SignPhasesOnDecodedCodes) {
  const QpeConfig c = config_with_bits(3);
  const Vector psi{1.0, 0.0};
  const PointerState plus = qpe_correlate(ComplexMatrix::identity(2), psi, c);
  const PointerState plus_phased = apply_phase_function(plus, SpectralFunction::sign_phase(), c);
  EXPECT_LE(max_entry_diff(plus_phased.flag_clear, plus.flag_clear), 1e-14);
  const PointerState minus = qpe_correlate(ComplexMatrix::identity(2) * -1.0, psi, c);
  const PointerState minus_phased = apply_phase_function(minus, SpectralFunction::sign_phase(), c);
  EXPECT_LE(max_entry_diff(minus_phased.flag_clear, minus.flag_clear * -1.0), 1e-14);
  EXPECT_EQ(apply_phase_function(minus, SpectralFunction::zero(), c).flag_clear, minus.flag_clear);
}

TEST(ApplyPhaseFunction, FlagTakesSmallCodesWithoutPhase) {
  QpeConfig c = config_with_bits(3);
  const PointerState s = qpe_correlate(ComplexMatrix(1, 1), Vector{1.0}, c);
  const PointerState out = apply_phase_function(s, SpectralFunction::sign_phase(2.0), c);
  EXPECT_NEAR(out.flag_raised.max_abs(), 1.0, 1e-14);
  EXPECT_LE(out.flag_clear.max_abs(), 1e-14);
}

TEST(QpePipeline, StageInverseIsIdentity) {
  Rng rng(3);
  for (unsigned bits : {2u, 5u, 7u}) {
    const QpeConfig c = config_with_bits(bits);
    const ComplexMatrix h = cli::random_hermitian(4, rng) * 0.2;
    const Vector psi = cli::random_unit_vector(4, rng);
    PointerState s = apply_phase_function(qpe_correlate(h, psi, c), SpectralFunction::zero(), c);
    const UncomputeResult r = qpe_uncompute(std::move(s), h, c);
    EXPECT_LE(distance(r.state.clear, psi), 1e-12);
    EXPECT_LE(r.diagnostics.leakage_norm, 1e-12);
  }
}

TEST(QpePipeline, NormPreservedBeforeProjection) {
  Rng rng(4);
  const QpeConfig c = config_with_bits(5);
  const ComplexMatrix h = cli::random_hermitian(3, rng) * 0.2;
  const Vector psi = cli::random_unit_vector(3, rng);
  const PointerState s =
      apply_phase_function(qpe_correlate(h, psi, c), SpectralFunction::sign_phase(), c);
  EXPECT_NEAR(s.norm_sq(), 1.0, 1e-12);
  const SpectralOutput out = spectral_transform_qpe(h, SpectralFunction::sign_phase(), psi, c);
  EXPECT_NEAR(out.diagnostics.pipeline_norm, 1.0, 1e-12);
}

TEST(QpePipeline, DyadicSpectrumIsExact) {
  Rng rng(5);
  for (unsigned bits : {3u, 4u, 6u}) {
    const QpeConfig c = config_with_bits(bits);
    const ComplexMatrix h = dyadic_hermitian(4, bits, rng);
    const Vector psi = cli::random_unit_vector(4, rng);
    const SpectralOutput out = spectral_transform_qpe(h, SpectralFunction::sign_phase(), psi, c);
    EXPECT_GE(out.diagnostics.fidelity_vs_exact, 1.0 - 1e-9);
    EXPECT_LE(out.diagnostics.leakage_norm, 1e-9);
    const SpectralOutput lin = spectral_transform_qpe(h, SpectralFunction::linear(0.7), psi, c);
    EXPECT_LE(distance(lin.state.clear, matrix_exp_hermitian(h, 0.7) * psi), 1e-9);
  }
}

TEST(QpePipeline, OffGridEigenvalueLeaks) {
  const QpeConfig c = config_with_bits(6);
  const ComplexMatrix h{{1.0 / 3.0}};
  const SpectralOutput out =
      spectral_transform_qpe(h, SpectralFunction::sign_phase(), Vector{1.0}, c);
  EXPECT_GT(out.diagnostics.leakage_norm, 0.0);
  EXPECT_FALSE(out.diagnostics.rounding.empty());
}

TEST(QpePipeline, Linearity) {
  Rng rng(6);
  const QpeConfig c = config_with_bits(4);
  const ComplexMatrix h = cli::random_hermitian(3, rng) * 0.3;
  const SpectralFunction f = SpectralFunction::sign_phase();
  // Run the unprojected stages so the map stays linear.
  auto pipeline = [&](const Vector& v) {
    const PointerState s = apply_phase_function(qpe_correlate(h, v, c), f, c);
    return s.flag_clear;
  };
  const Vector x = cli::random_unit_vector(3, rng);
  const Vector y = cli::random_unit_vector(3, rng);
  const cplx alpha(0.3, 0.4), beta(-0.5, 0.2);
  const ComplexMatrix lhs = pipeline(add(scaled(x, alpha), scaled(y, beta)));
  const ComplexMatrix rhs = pipeline(x) * alpha + pipeline(y) * beta;
  EXPECT_LE(max_entry_diff(lhs, rhs), 1e-10);
}

TEST(QpePipeline, FlagCompleteness) {
  Rng rng(7);
  QpeConfig c = config_with_bits(5);
  c.kappa_tilde = 4.0;
  const ComplexMatrix h = cli::random_hermitian(4, rng) * 0.2;
  const Vector psi = cli::random_unit_vector(4, rng);
  const SpectralOutput out = spectral_transform_qpe(h, SpectralFunction::sign_phase(), psi, c);
  const double clear = std::pow(norm(out.state.clear), 2);
  EXPECT_NEAR(out.diagnostics.flag_probability + clear, 1.0, 1e-12);
  EXPECT_NEAR(out.state.flag_probability(), out.diagnostics.flag_probability, 1e-12);
}

TEST(QpeUnitary, BlackBoxMatchesHamiltonianRoute) {
  Rng rng(8);
  const QpeConfig c = config_with_bits(4);
  const ComplexMatrix h = dyadic_hermitian(3, 4, rng);
  const QpeUnitary from_h = QpeUnitary::from_hamiltonian(h, c);
  const QpeUnitary from_w = QpeUnitary::from_unitary(from_h.power(0), 4);
  for (unsigned j = 0; j < 4; ++j) {
    EXPECT_LE(max_entry_diff(from_h.power(j), from_w.power(j)), 1e-12);
  }
  const Vector psi = cli::random_unit_vector(3, rng);
  const SpectralOutput a = spectral_transform_qpe(h, SpectralFunction::sign_phase(), psi, c);
  const SpectralOutput b =
      spectral_transform_qpe(from_w, h, SpectralFunction::sign_phase(), psi, c);
  EXPECT_LE(distance(a.state.clear, b.state.clear), 1e-10);
}

TEST(FlaggedFidelity, Basics) {
  const FlaggedState a{{1.0, 0.0}, {0.0, 0.0}};
  const FlaggedState b{{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_NEAR(flagged_fidelity(a, a), 1.0, 1e-15);
  EXPECT_NEAR(flagged_fidelity(a, b), 0.0, 1e-15);
}

}  // namespace
}  // namespace qpolar
