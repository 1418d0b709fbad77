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
#include "fedosov/transport.hpp"

using namespace fedosov;

namespace {

S3Field random_field(std::mt19937_64& rng, int max_freq = 1) {
  return checks::random_s3(rng, 1, max_freq, 1);
}

ScalarFn random_fn(std::mt19937_64& rng) { return checks::random_real_function(rng, 1, 1, 1); }

ScalarFn zero_mean(const ScalarFn& f) { return f - ScalarFn::constant(f.n(), f.mean()); }

WeylElement unit(int N) {
  return WeylElement::from_scalar(1, N, ScalarFn::constant(1, Complex(1)));
}

struct PathCase {
  SymplecticConnection base;
  S3Field A;
  TransportElement te;
};

const PathCase& path_case(std::uint64_t seed) {
  static std::map<std::uint64_t, PathCase> cache;
  auto it = cache.find(seed);
  if (it == cache.end()) {
    std::mt19937_64 rng(seed);
    SymplecticConnection c(random_field(rng));
    S3Field A = random_field(rng);
    TransportElement te = solve_v(ConnectionPath(c, {A}), 4);
    it = cache.emplace(seed, PathCase{c, A, std::move(te)}).first;
  }
  return it->second;
}

FormalFunction ff(const ScalarFn& f, int k) { return FormalFunction::from_scalar(f, k); }

} // namespace

TEST(Transport, ConstantPathIsIdentity) {
  std::mt19937_64 rng(1);
  SymplecticConnection c(random_field(rng));
  TransportElement te = solve_v(ConnectionPath(c, {}), 4);
  EXPECT_TRUE(te.gen.h.is_zero());
  EXPECT_EQ(te.v, unit(4).as_extended());
}

TEST(Transport, GeneratorIsMinusAlphaAtStart) {
  const auto& pc = path_case(2);
  const WeylElement& h = pc.te.gen.h;
  EXPECT_EQ(h.min_degree(), 3);
  auto base = FedosovContext::solve(pc.base, 4);
  EXPECT_TRUE((h.param_evaluate(Param::t, Rational(0)) + vary(base, pc.A).alpha.alpha).is_zero());
}

TEST(Transport, SolvesTheInitialValueProblem) {
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto& te = path_case(seed).te;
    EXPECT_TRUE(te.v.extended());
    EXPECT_EQ(te.v.param_evaluate(Param::t, Rational(0)), unit(4).as_extended());
    EXPECT_TRUE(ode_residual(te).is_zero());
    EXPECT_EQ(circ(te.v, te.v_inv), unit(4).as_extended());
    EXPECT_EQ(circ(te.v_inv, te.v), unit(4).as_extended());
  }
}

TEST(Transport, FixesOneAndPreservesFlatness) {
  std::mt19937_64 rng(7);
  const auto& pc = path_case(1);
  EXPECT_EQ(transport(pc.te, unit(4)), unit(4));
  auto base = FedosovContext::solve(pc.base, 4);
  TransportCheck chk = transport_check(pc.te, base, random_fn(rng), random_fn(rng));
  EXPECT_TRUE(chk.flatness.degree_range(0, 2).is_zero());
  EXPECT_EQ(chk.trusted_order, 1);
  EXPECT_EQ(chk.product, chk.image);
}

TEST(Transport, CapViolationReportsRequiredDegree) {
  std::mt19937_64 rng(3);
  SymplecticConnection c(random_field(rng));
  ParamCapScope caps(1, 64);
  try {
    ConnectionPath p(c, {random_field(rng), random_field(rng)});
    FAIL() << "expected a cap error";
  } catch (const ParamCapError& e) {
    EXPECT_EQ(e.required(), 2);
  }
}

TEST(Holonomy, RejectsBrokenBoundary) {
  std::mt19937_64 rng(4);
  SymplecticConnection c(random_field(rng));
  S3Field A = random_field(rng);
  EXPECT_THROW(ConnectionDisk(c, A.times(ParamCoeff::variable(Param::s))), std::invalid_argument);
  ParamCoeff st = ParamCoeff::variable(Param::s) * ParamCoeff::variable(Param::t);
  EXPECT_THROW(ConnectionDisk(c, A.times(st)), std::invalid_argument);
}

TEST(Holonomy, ConstantDiskHasNoHolonomy) {
  std::mt19937_64 rng(5);
  SymplecticConnection c(random_field(rng));
  Holonomy h = holonomy_generator(ConnectionDisk(c, S3Field(1)), 4);
  EXPECT_TRUE(h.generator.is_zero());
  EXPECT_TRUE(h.direct.is_zero());
}

TEST(Holonomy, GeneratorMatchesDirectDerivative) {
  std::mt19937_64 rng(6);
  SymplecticConnection c(random_field(rng));
  S3Field A = random_field(rng), B = random_field(rng);
  Holonomy h = holonomy_generator(ConnectionDisk::spanned(c, A, B), 4);
  EXPECT_FALSE(h.generator.is_zero());
  EXPECT_TRUE(h.difference.is_zero());
  EXPECT_TRUE(h.integrand_flatness.degree_range(0, 3).is_zero());
  EXPECT_TRUE(h.generator_flatness.degree_range(0, 3).is_zero());
  EXPECT_GE(h.generator.min_degree(), 4);
}

TEST(Heisenberg, ZeroHamiltonianIsConstant) {
  std::mt19937_64 rng(8);
  auto ctx = FedosovContext::solve(SymplecticConnection(random_field(rng)), 6);
  ScalarFn F = random_fn(rng);
  FormalFunction a = heisenberg_flow(ctx, FormalFunction(1, 3), ff(F, 3), 3);
  EXPECT_EQ(a, ff(F, 2));
}

TEST(Heisenberg, FirstOrderIsPoissonFlow) {
  std::mt19937_64 rng(9);
  auto ctx = FedosovContext::solve(SymplecticConnection(random_field(rng)), 6);
  ScalarFn H = random_fn(rng), F = random_fn(rng);
  for (int sign : {1, -1}) {
    FormalFunction a = heisenberg_flow(ctx, ff(H, 3), ff(F, 3), 2, sign);
    EXPECT_EQ(a[0].param_evaluate(Param::t, Rational(0)), F);
    EXPECT_EQ(a[0].param_coefficient(Param::t, 1), poisson(H, F).scaled(Complex(sign)));
  }
}

TEST(Heisenberg, FlowIsAnAutomorphism) {
  std::mt19937_64 rng(10);
  auto ctx = FedosovContext::solve(SymplecticConnection(random_field(rng)), 6);
  const int T = 2;
  ScalarFn h0 = random_fn(rng), h1 = random_fn(rng), F = random_fn(rng), G = random_fn(rng);
  FormalFunction H = ff(h0 + h1.times(ParamCoeff::variable(Param::t)), 3);
  FormalFunction aF = heisenberg_flow(ctx, H, ff(F, 3), T);
  FormalFunction aG = heisenberg_flow(ctx, H, ff(G, 3), T);
  FormalFunction aFG = heisenberg_flow(ctx, H, ctx.star(F, G), T);
  ParamCapScope caps(T, 64);
  EXPECT_EQ(ctx.star(aF, aG).truncated(aFG.order()), aFG);
  EXPECT_EQ(heisenberg_flow(ctx, H, ff(ScalarFn::constant(1, Complex(1)), 3), T),
            ff(ScalarFn::constant(1, Complex(1)), 2));
}

TEST(ExpExtract, ZeroAndConstantGenerators) {
  std::mt19937_64 rng(11);
  auto ctx = FedosovContext::solve(SymplecticConnection(random_field(rng)), 8);
  EXPECT_TRUE(exp_extract(ctx, FormalFunction(1, 4), 3).is_zero());
  ScalarFn g = random_fn(rng);
  FormalFunction G(1, 4);
  G[2] = g;
  FormalFunction expected(1, 3);
  expected[1] = g;
  EXPECT_EQ(exp_extract(ctx, G, 3), expected);
}

TEST(ExpExtract, MatchesOrderedExponential) {
  std::mt19937_64 rng(12);
  auto ctx = FedosovContext::solve(SymplecticConnection(random_field(rng)), 8);
  const int k = trusted_bracket_order(ctx);
  FormalFunction G(1, 4);
  G[2] = ScalarFn::cos(1, Frequency{1, 0}) +
         ScalarFn::sin(1, Frequency{0, 1}).times(ParamCoeff::variable(Param::s));
  G[3] = random_fn(rng).times(ParamCoeff::variable(Param::s));
  FormalFunction Gt = exp_extract(ctx, G, k);
  EXPECT_NE(Gt, G.param_integrate(Param::s).param_evaluate(Param::s, Rational(1)).nu_shifted(-1).truncated(k));
  for (int i = 0; i < 2; ++i) {
    FormalFunction F = ff(random_fn(rng), 4);
    EXPECT_EQ(apply_exponential(ctx, Gt, F).truncated(k), ordered_exponential(ctx, G, F).truncated(k));
  }
  EXPECT_THROW(exp_extract(ctx, G, k + 1), std::invalid_argument);
  FormalFunction low(1, 4);
  low[1] = random_fn(rng);
  EXPECT_THROW(exp_extract(ctx, low, k), std::invalid_argument);
}

TEST(Action, HolonomyRouteMatchesDefinition) {
  std::mt19937_64 rng(13);
  SymplecticConnection c(random_field(rng));
  S3Field A = random_field(rng, 0), B = random_field(rng, 0);
  ScalarFn H = zero_mean(random_fn(rng)).times(ParamCoeff::variable(Param::t));
  ActionValue av = action_functional(ConnectionDisk::spanned(c, A, B), H, 4);
  EXPECT_TRUE(av.difference.is_zero());
  TorusIntegral e = omega_E(A, B);
  ASSERT_FALSE(e.value.is_zero());
  EXPECT_EQ(av.omega_part.coefficient(0), e.value * Complex(Rational(-1, 60)));
  ActionValue zero = action_functional(ConnectionDisk::spanned(c, A, B), ScalarFn(1), 4);
  EXPECT_EQ(zero.value, zero.omega_part.truncated(zero.trusted_order));
}

TEST(Action, ConstantDiskIsMomentTerm) {
  std::mt19937_64 rng(14);
  SymplecticConnection c(random_field(rng));
  ScalarFn h = zero_mean(random_fn(rng));
  ActionValue av =
      action_functional(ConnectionDisk(c, S3Field(1)), h.times(ParamCoeff::variable(Param::t)), 6);
  EXPECT_TRUE(av.omega_part.is_zero());
  EXPECT_EQ(av.trusted_order, 0);
  EXPECT_EQ(av.value.coefficient(0),
            integrate_torus(h * cahen_gutt_mu(c)).value * Complex(Rational(-1, 2)));
  EXPECT_THROW(action_functional(ConnectionDisk(c, S3Field(1)), ScalarFn::constant(1, Complex(1)), 4),
               std::invalid_argument);
}
