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
#include "fedosov/fedosov.hpp"

using namespace fedosov;

namespace {

SymplecticConnection random_connection(std::uint64_t seed, int n = 1) {
  std::mt19937_64 rng(seed);
  return SymplecticConnection(checks::random_s3(rng, n, 1, 1));
}

ScalarFn random_fn(std::mt19937_64& rng, int n = 1) {
  return checks::random_real_function(rng, n, 1, 2);
}

// y^i ⊗ f (a 0-form of degree 1).
WeylElement y_times(int n, int N, int i, const ScalarFn& f) {
  YExponents e{};
  e[i] = 1;
  return WeylElement::monomial(n, N, WeylKey(0, e, 0), f);
}

const FedosovContext& context6(std::uint64_t seed) {
  static std::map<std::uint64_t, FedosovContext> cache;
  auto it = cache.find(seed);
  if (it == cache.end()) it = cache.emplace(seed, FedosovContext::solve(random_connection(seed), 6)).first;
  return it->second;
}

} // namespace

TEST(Fedosov, FlatConnectionGivesMoyal) {
  std::mt19937_64 rng(11);
  for (auto [n, N] : {std::pair{1, 8}, std::pair{2, 4}}) {
    auto ctx = FedosovContext::solve(SymplecticConnection::flat(n), N);
    EXPECT_TRUE(ctx.r().is_zero());
    ScalarFn f = random_fn(rng, n), g = random_fn(rng, n);
    auto F = FormalFunction::from_scalar(f, ctx.nu_order());
    auto G = FormalFunction::from_scalar(g, ctx.nu_order());
    EXPECT_EQ(ctx.star(F, G), checks::moyal_star_oracle(F, G, ctx.nu_order()));
  }
}

TEST(Fedosov, FlatPartialIsExteriorDerivative) {
  std::mt19937_64 rng(2);
  auto ctx = FedosovContext::solve(SymplecticConnection::flat(1), 4);
  WeylElement a = y_times(1, 4, 0, random_fn(rng));
  EXPECT_EQ(ctx.partial(a), exterior_d(a));
  EXPECT_TRUE(ctx.partial(WeylElement::from_scalar(1, 4, ScalarFn::constant(1, Complex(1)))).is_zero());
}

TEST(Fedosov, SolverInvariants) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto& ctx = context6(seed);
    const int N = ctx.order();
    ASSERT_FALSE(ctx.r().is_zero());
    EXPECT_EQ(ctx.r().min_degree(), 3);
    EXPECT_TRUE(delta_inv(ctx.r()).is_zero());
    EXPECT_EQ(ctx.r().degree_part(3), delta_inv(ctx.r_bar()));
    EXPECT_TRUE(ctx.r_equation_residual().degree_range(0, N - 1).is_zero());
  }
}

TEST(Fedosov, PartialSquaredIsCurvature) {
  std::mt19937_64 rng(5);
  const auto& ctx = context6(1);
  WeylElement a = y_times(1, 6, 0, random_fn(rng)) + y_times(1, 6, 1, random_fn(rng));
  EXPECT_EQ(ctx.partial(ctx.partial(a)), commutator_over_nu(ctx.r_bar(), a));
}

TEST(Fedosov, QuantizationIsInverseOfSymbol) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto& ctx = context6(seed);
    FormalFunction F(1, ctx.nu_order());
    F[0] = random_fn(rng);
    F[1] = random_fn(rng);
    WeylElement Q = ctx.quantize(F);
    EXPECT_EQ(Q.symbol().truncated(ctx.nu_order()), F);
    EXPECT_TRUE(ctx.D(Q).degree_range(0, ctx.order() - 1).is_zero());
  }
  const auto& ctx = context6(1);
  auto one = ScalarFn::constant(1, Complex(1));
  EXPECT_EQ(ctx.quantize(one), WeylElement::from_scalar(1, 6, one));
}

TEST(Fedosov, StarAxioms) {
  std::mt19937_64 rng(13);
  auto one = ScalarFn::constant(1, Complex(1));
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto& ctx = context6(seed);
    ScalarFn f = random_fn(rng), g = random_fn(rng);
    auto F = FormalFunction::from_scalar(f, ctx.nu_order());
    EXPECT_EQ(ctx.star(f, one), F);
    EXPECT_EQ(ctx.star(one, f), F);
    auto fg = ctx.star(f, g), gf = ctx.star(g, f);
    EXPECT_EQ(fg[0], f * g);
    EXPECT_EQ(fg[1] - gf[1], poisson(f, g));
    EXPECT_EQ(ctx.star_commutator_over_nu(F, FormalFunction::from_scalar(g, ctx.nu_order()))
                  .truncated(ctx.nu_order() - 1),
              (fg - gf).nu_shifted(-1).truncated(ctx.nu_order() - 1));
  }
}

TEST(Fedosov, StarIsAssociative) {
  std::mt19937_64 rng(17);
  const auto& ctx = context6(2);
  const int k = ctx.nu_order();
  auto F = FormalFunction::from_scalar(random_fn(rng), k);
  auto G = FormalFunction::from_scalar(random_fn(rng), k);
  auto H = FormalFunction::from_scalar(random_fn(rng), k);
  auto left = ctx.star(ctx.star(F, G), H).truncated(k - 1);
  auto right = ctx.star(F, ctx.star(G, H)).truncated(k - 1);
  EXPECT_EQ(left, right);
}

TEST(Fedosov, DIsAFlatDerivation) {
  std::mt19937_64 rng(19);
  const auto& ctx = context6(3);
  const int N = ctx.order();
  WeylElement a = y_times(1, N, 0, random_fn(rng)) + y_times(1, N, 1, random_fn(rng)) +
                  WeylElement::from_scalar(1, N, random_fn(rng));
  WeylElement b = y_times(1, N, 1, random_fn(rng)) + WeylElement::from_scalar(1, N, random_fn(rng));
  EXPECT_TRUE(ctx.D(ctx.D(a)).degree_range(0, N - 2).is_zero());
  WeylElement lhs = ctx.D(circ(a, b));
  WeylElement rhs = circ(ctx.D(a), b) + circ(a, ctx.D(b));
  EXPECT_EQ(lhs.degree_range(0, N - 1), rhs.degree_range(0, N - 1));
}

TEST(Fedosov, DInverseRoundTrip) {
  std::mt19937_64 rng(23);
  const auto& ctx = context6(4);
  const int N = ctx.order();
  EXPECT_TRUE(ctx.d_inverse(WeylElement(1, N)).is_zero());
  YExponents yy{};
  yy[0] = 2;
  WeylElement a0 = y_times(1, N, 0, random_fn(rng)) +
                   WeylElement::monomial(1, N, WeylKey(0, yy, 0), random_fn(rng)) +
                   WeylElement::monomial(1, N, WeylKey(1, YExponents{}, 0), random_fn(rng)).degree_range(3, N);
  WeylElement b = ctx.D(a0);
  WeylElement a = ctx.d_inverse(b);
  EXPECT_TRUE(a.symbol().is_zero());
  EXPECT_EQ(a.degree_range(0, N - 1), a0.degree_range(0, N - 1));
  EXPECT_TRUE((ctx.D(a) - b).degree_range(0, N - 2).is_zero());
}

TEST(Fedosov, DInverseRejectsNonFlat) {
  const auto& ctx = context6(1);
  YExponents e{};
  e[0] = 1;
  WeylElement b = WeylElement::monomial(1, 6, WeylKey(0, e, 0b10), ScalarFn::constant(1, Complex(1)));
  EXPECT_THROW(ctx.d_inverse(b), FlatnessError);
}
