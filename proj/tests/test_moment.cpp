// Copyright 2026 The fedosov-torus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "fedosov/checks.hpp"
#include "fedosov/moment.hpp"

using namespace fedosov;

namespace {

S3Field random_field(std::mt19937_64& rng, int max_freq = 1) {
  return checks::random_s3(rng, 1, max_freq, 1);
}

ScalarFn random_fn(std::mt19937_64& rng) { return checks::random_real_function(rng, 1, 1, 2); }

ScalarFn zero_mean(const ScalarFn& f) {
  return f - ScalarFn::constant(f.n(), f.mean());
}

const FedosovContext& context(std::uint64_t seed, int N) {
  static std::map<std::pair<std::uint64_t, int>, FedosovContext> cache;
  auto key = std::pair{seed, N};
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::mt19937_64 rng(seed);
    it = cache.emplace(key, FedosovContext::solve(SymplecticConnection(random_field(rng)), N)).first;
  }
  return it->second;
}

// −(1/6) A_{ijk} y^i y^j y^k, summed over all index triples.
WeylElement cubic_oracle(const S3Field& A, int N) {
  WeylElement out(A.n(), N);
  const int D = A.dim();
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k) {
        YExponents e{};
        ++e[std::size_t(i)];
        ++e[std::size_t(j)];
        ++e[std::size_t(k)];
        out += WeylElement::monomial(A.n(), N, WeylKey(0, e, 0),
                                     A(i, j, k).scaled(Complex(Rational(-1, 6))));
      }
  return out;
}

} // namespace

TEST(Alpha, ZeroDirectionGivesZero) {
  const auto& ctx = context(1, 6);
  EXPECT_TRUE(vary(ctx, S3Field(1)).alpha.alpha.is_zero());
}

TEST(Alpha, Contract) {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto& ctx = context(seed, 6);
    S3Field A = random_field(rng);
    Variation v = vary(ctx, A);
    const WeylElement& a = v.alpha.alpha;
    EXPECT_TRUE(a.symbol().is_zero());
    EXPECT_EQ(a.min_degree(), 3);
    EXPECT_TRUE((ctx.D(a) - v.alpha.source).degree_range(0, ctx.order() - 1).is_zero());
    // Lowest term: −δ⁻¹Ā in our sign convention.
    EXPECT_EQ(a.degree_part(3), -delta_inv(gammabar(A, 6)));
    EXPECT_EQ(a.degree_part(3), cubic_oracle(A, 6));
  }
}

TEST(FormalConnection, ConstantSectionAlongZero) {
  std::mt19937_64 rng(37);
  const auto& ctx = context(2, 6);
  Variation v = vary(ctx, S3Field(1));
  auto F = FormalFunction::from_scalar(random_fn(rng), 3);
  EXPECT_TRUE(formal_connection_apply(v, F).is_zero());
}

TEST(FormalConnection, LeibnizOverStar) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto& ctx = context(seed, 6);
    Variation v = vary(ctx, random_field(rng));
    const int k = trusted_bracket_order(ctx);
    auto F = FormalFunction::from_scalar(random_fn(rng), ctx.nu_order());
    auto G = FormalFunction::from_scalar(random_fn(rng), ctx.nu_order());
    FormalFunction FG;
    {
      JetScope scope({v.param});
      FG = v.jet.star(F, G); // the section ∇ ↦ F ★_∇ G along the line
    }
    FormalFunction lhs = formal_connection_apply(v, FG);
    FormalFunction rhs = ctx.star(formal_connection_apply(v, F), G) +
                         ctx.star(F, formal_connection_apply(v, G));
    EXPECT_EQ(lhs.truncated(k), rhs.truncated(k));
  }
}

TEST(FormalConnection, LiftAgreesWithQuantization) {
  std::mt19937_64 rng(43);
  const auto& ctx = context(3, 6);
  Variation v = vary(ctx, random_field(rng));
  FormalFunction F(1, ctx.nu_order());
  F[0] = random_fn(rng);
  // A section that moves with the connection: F(∇ + tA) = F₀ + t F₁.
  F[1] = random_fn(rng).times(ParamCoeff::variable(Param::t));
  WeylElement lift = formal_connection_lift(v, F);
  FormalFunction applied = formal_connection_apply(v, F);
  const int k = trusted_bracket_order(ctx);
  EXPECT_EQ(lift.symbol().truncated(k), applied.truncated(k));
  EXPECT_TRUE(ctx.D(lift).degree_range(0, ctx.order() - 2).is_zero());
  EXPECT_EQ(lift.degree_range(0, 2 * k), ctx.quantize(applied).degree_range(0, 2 * k));
}

TEST(Curvature, FlatAntisymmetricAndLeadingTerm) {
  std::mt19937_64 rng(47);
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto& ctx = context(seed, 6);
    S3Field A = random_field(rng), B = random_field(rng);
    CurvatureValue ab = curvature_R(ctx, A, B);
    CurvatureValue ba = curvature_R(ctx, B, A);
    EXPECT_EQ(ab.R, -ba.R);
    EXPECT_TRUE(ctx.D(ab.R).degree_range(0, ctx.order() - 1).is_zero());
    EXPECT_TRUE(ab.symbol[0].is_zero());
    EXPECT_TRUE(ab.symbol[1].is_zero());
    EXPECT_EQ(ab.symbol[2], triple_lambda_contraction(A, B).scaled(Complex(Rational(1, 24))));
  }
}

TEST(Curvature, RepeatedDirectionVanishes) {
  std::mt19937_64 rng(53);
  const auto& ctx = context(4, 6);
  S3Field A = random_field(rng);
  EXPECT_TRUE(curvature_R(ctx, A, A).R.is_zero());
}

TEST(Curvature, OperatorRouteMatchesCommutator) {
  std::mt19937_64 rng(59);
  // The commutator has no symbol below ν³, so N = 8 is the first order
  // where the comparison is not vacuous.
  const auto& ctx = context(5, 8);
  CurvatureValue cv = curvature_R(ctx, random_field(rng), random_field(rng));
  auto F = FormalFunction::from_scalar(random_fn(rng), ctx.nu_order());
  FormalFunction direct = curvature_operator(cv, F);
  FormalFunction via_R = curvature_commutator(ctx, cv, F);
  const int k = trusted_bracket_order(ctx);
  EXPECT_EQ(direct.truncated(k), via_R.truncated(k));
  EXPECT_FALSE(via_R.is_zero());
}

namespace {

const TraceDensity& density(std::uint64_t seed, int N) {
  static std::map<std::pair<std::uint64_t, int>, TraceDensity> cache;
  auto key = std::pair{seed, N};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, trace_density(context(seed, N))).first;
  return it->second;
}

FormalFunction constant_series(int n, int order) {
  return FormalFunction::from_scalar(ScalarFn::constant(n, Complex(1)), order);
}

} // namespace

TEST(TraceDensity, SymbolMeanMatchesFullSymbol) {
  std::mt19937_64 rng(5);
  const auto& ctx = context(2, 6);
  WeylElement a = ctx.quantize(random_fn(rng)), b = ctx.quantize(random_fn(rng));
  FormalFunction full = commutator_over_nu_symbol(a, b);
  auto means = commutator_over_nu_symbol_mean(a, b);
  ASSERT_EQ(int(means.size()), ctx.order() / 2 + 1);
  for (int k = 0; k < int(means.size()); ++k) EXPECT_EQ(means[std::size_t(k)], full[k].mean()) << k;
}

TEST(TraceDensity, FlatIsOne) {
  auto ctx = FedosovContext::solve(SymplecticConnection::flat(1), 6);
  TraceDensity td = trace_density(ctx);
  EXPECT_EQ(td.rho, constant_series(1, td.order()));
}

TEST(TraceDensity, RicciRelation) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto& td = density(seed, 6);
    ASSERT_EQ(td.order(), 2);
    EXPECT_EQ(td.rho[0], ScalarFn::constant(1, Complex(1)));
    EXPECT_TRUE(td.rho[1].is_zero());
    EXPECT_TRUE(td.rho[2].mean().is_zero());
    EXPECT_EQ(td.rho[2], td.rho[2].conj());
    ScalarFn mu = cahen_gutt_mu(context(seed, 6).connection());
    EXPECT_EQ(td.rho[2], mu.scaled(Complex(Rational(-1, 24))));
  }
}

TEST(TraceDensity, KillsCommutatorsBeyondTestBox) {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto& ctx = context(seed, 6);
    const auto& td = density(seed, 6);
    ScalarFn f = checks::random_real_function(rng, 1, td.test_cutoff + 1, 2);
    ScalarFn g = checks::random_real_function(rng, 1, 1, 2);
    FormalFunction c = ctx.star_commutator_over_nu(FormalFunction::from_scalar(f, ctx.nu_order()),
                                                   FormalFunction::from_scalar(g, ctx.nu_order()));
    EXPECT_TRUE(trace(td, c.truncated(td.order())).is_zero());
  }
}

TEST(TraceDensity, TraceOfOne) {
  const auto& td = density(1, 6);
  FormalScalar t = trace(td, constant_series(1, td.order()));
  EXPECT_EQ(t.coefficient(0), ParamCoeff(4));
  for (int k = 1; k <= t.top(); ++k) EXPECT_TRUE(t.coefficient(k).is_zero());
  EXPECT_EQ(t.inv_two_pi_nu(), 1);
  EXPECT_EQ(t.pi_power(), 2);
}

TEST(TraceDensity, RejectsTooSmallTestBox) {
  EXPECT_THROW(trace_density(context(1, 6), -1, 1), TraceDensityError);
}

TEST(OmegaTilde, LeadingTermAndSymmetry) {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto& ctx = context(seed, 6);
    const auto& td = density(seed, 6);
    S3Field A = random_field(rng), B = random_field(rng);
    FormalScalar ab = omega_tilde(ctx, td, A, B);
    FormalScalar ba = omega_tilde(ctx, td, B, A);
    EXPECT_TRUE((ab + ba).is_zero());
    EXPECT_TRUE(omega_tilde(ctx, td, A, A).is_zero());
    EXPECT_TRUE(omega_tilde(ctx, td, A, S3Field(1)).is_zero());
    TorusIntegral e = omega_E(A, B);
    EXPECT_EQ(ab.pi_power(), e.pi_power);
    EXPECT_EQ(ab.coefficient(0), e.value);
    EXPECT_TRUE(ab.coefficient(-2).is_zero());
    EXPECT_TRUE(ab.coefficient(-1).is_zero());
  }
}

TEST(MuTilde, LeadingTermIsCahenGutt) {
  std::mt19937_64 rng(29);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto& td = density(seed, 6);
    ScalarFn H = zero_mean(random_fn(rng)), K = zero_mean(random_fn(rng));
    FormalScalar m = mu_tilde(td, H);
    EXPECT_TRUE(m.coefficient(-2).is_zero());
    EXPECT_TRUE(m.coefficient(-1).is_zero());
    TorusIntegral hm = integrate_torus(H * cahen_gutt_mu(context(seed, 6).connection()));
    EXPECT_EQ(m.pi_power(), hm.pi_power);
    EXPECT_EQ(m.coefficient(0), hm.value);
    EXPECT_EQ(mu_tilde(td, H + K), m + mu_tilde(td, K));
  }
}

TEST(MuTilde, FlatVanishesAndMeanIsRejected) {
  auto ctx = FedosovContext::solve(SymplecticConnection::flat(1), 6);
  TraceDensity td = trace_density(ctx);
  std::mt19937_64 rng(3);
  EXPECT_TRUE(mu_tilde(td, zero_mean(random_fn(rng))).is_zero());
  EXPECT_THROW(mu_tilde(td, ScalarFn::constant(1, Complex(1))), std::invalid_argument);
}

TEST(MomentMap, ResidualVanishes) {
  std::mt19937_64 rng(37);
  bool nontrivial = false;
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto& ctx = context(seed, 6);
    const auto& td = density(seed, 6);
    S3Field A = random_field(rng);
    ScalarFn H = zero_mean(random_fn(rng));
    MomentResidual m = moment_residual(ctx, td, A, H);
    EXPECT_EQ(m.trusted_order, 0);
    nontrivial |= !m.lhs.is_zero();
    TangentS3 L = lie_derivative_conn(H, ctx.connection());
    EXPECT_EQ(m.lhs.coefficient(0), omega_E(L, A).value);
    EXPECT_TRUE(m.difference.is_zero()) << m.difference.to_string();
    EXPECT_TRUE(m.toshow_pointwise.is_zero());
    EXPECT_TRUE(m.toshow.is_zero());
    EXPECT_TRUE(m.qh_residual.is_zero());
  }
  EXPECT_TRUE(nontrivial);
}

TEST(Bianchi, ClosedAtEveryLevel) {
  std::mt19937_64 rng(41);
  const auto& ctx = context(3, 6);
  const auto& td = density(3, 6);
  S3Field A = random_field(rng), B = random_field(rng), C = random_field(rng);
  BianchiResidual b = bianchi_residual(ctx, td, A, B, C);
  EXPECT_TRUE(b.pointwise.is_zero());
  EXPECT_TRUE(b.traced.is_zero());
  EXPECT_TRUE(b.lifted.degree_range(0, ctx.order() - 1).is_zero());
}
