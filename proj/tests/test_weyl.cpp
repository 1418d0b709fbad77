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

#include <random>

#include "fedosov/checks.hpp"
#include "fedosov/weyl.hpp"

using namespace fedosov;

namespace {

ScalarFn one(int n) { return ScalarFn::constant(n, Complex(1)); }

// Random element: a few monomials with random ν, y, dx and small random coefficients.
WeylElement random_weyl(std::mt19937_64& rng, int n, int N, int terms, int max_form = 2) {
  std::uniform_int_distribution<int> ed(0, 3), nd(0, 1), md(0, (1 << (2 * n)) - 1);
  WeylElement a(n, N);
  for (int t = 0; t < terms; ++t) {
    YExponents y{};
    for (int i = 0; i < 2 * n; ++i) y[i] = ed(rng);
    unsigned mask = unsigned(md(rng));
    if (__builtin_popcount(mask) > max_form) mask = 0;
    WeylKey key(nd(rng), y, mask);
    if (key.total_degree() > N) continue;
    a += WeylElement::monomial(n, N, key, checks::random_real_function(rng, n, 1, 1));
  }
  return a;
}

WeylElement y(int n, int N, int i) { return WeylElement::y(n, N, i); }

} // namespace

TEST(Weyl, UnitAndBasicProducts) {
  const int n = 1, N = 6;
  WeylElement a = random_weyl(*new std::mt19937_64(1), n, N, 6);
  WeylElement unit = WeylElement::from_scalar(n, N, one(n));
  EXPECT_EQ(circ(unit, a), a);
  EXPECT_EQ(circ(a, unit), a);

  SymplecticData sd{n};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      YExponents e{};
      e[i] += 1;
      e[j] += 1;
      WeylElement expect = WeylElement::monomial(n, N, WeylKey(0, e, 0), one(n)) +
                           WeylElement::nu(n, N).scaled(Complex(Rational(sd.lambda(i, j), 2)));
      EXPECT_EQ(circ(y(n, N, i), y(n, N, j)), expect);
      EXPECT_EQ(graded_commutator(y(n, N, i), y(n, N, j)),
                WeylElement::nu(n, N).scaled(Complex(sd.lambda(i, j))));
    }
  }
  // Λ^{12} = -1 in this convention.
  EXPECT_EQ(graded_commutator(y(n, N, 0), y(n, N, 1)), WeylElement::nu(n, N).scaled(Complex(-1)));
}

TEST(Weyl, CommutatorOfLinearTermsWithFunctions) {
  const int n = 1, N = 5;
  ScalarFn f = ScalarFn::cos(n, {1, 0}), g = ScalarFn::sin(n, {0, 1});
  WeylElement a = y(n, N, 0).times_function(f), b = y(n, N, 1).times_function(g);
  EXPECT_EQ(graded_commutator(a, b), WeylElement::nu(n, N).times_function(f * g).scaled(Complex(-1)));
  EXPECT_EQ(commutator_over_nu(a, b), WeylElement::from_scalar(n, N, (f * g).scaled(Complex(-1))));
}

TEST(Weyl, DeltaAgreesWithCommutatorRoute) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 2; ++n) {
    const int N = n == 1 ? 6 : 4;
    SymplecticData sd{n};
    WeylElement w(n, N);
    for (int i = 0; i < 2 * n; ++i) {
      for (int j = 0; j < 2 * n; ++j) {
        if (sd.omega(i, j) == 0) continue;
        YExponents e{};
        e[i] = 1;
        w += WeylElement::monomial(n, N, WeylKey(0, e, 1u << j), one(n).scaled(Complex(sd.omega(i, j))));
      }
    }
    for (int trial = 0; trial < 5; ++trial) {
      WeylElement a = random_weyl(rng, n, N, 6, 1);
      EXPECT_EQ(delta(a), -commutator_over_nu(w, a).with_order(N));
    }
  }
}

TEST(Weyl, DeltaInverseExamples) {
  const int n = 1, N = 5;
  ScalarFn f = ScalarFn::cos(n, {1, -1});
  WeylElement fd = WeylElement::monomial(n, N, WeylKey(0, {0, 0, 0, 0}, 2u), f);
  EXPECT_EQ(delta_inv(fd), y(n, N, 1).times_function(f));
  EXPECT_TRUE(delta(WeylElement::from_scalar(n, N, f)).is_zero());
  EXPECT_TRUE(delta_inv(WeylElement::from_scalar(n, N, f)).is_zero());
}

TEST(Weyl, SymbolAndTruncate) {
  const int n = 1, N = 6;
  ScalarFn F = ScalarFn::cos(n, {1, 0}), g = ScalarFn::sin(n, {1, 1});
  WeylElement yy = WeylElement::monomial(n, N, WeylKey(1, {1, 1, 0, 0}, 0), g);
  WeylElement a = WeylElement::from_scalar(n, N, F) + yy;
  EXPECT_EQ(a.symbol(), FormalFunction::from_scalar(F, N / 2));
  EXPECT_TRUE(y(n, N, 0).symbol().is_zero());
  EXPECT_EQ(truncate(a, 3), WeylElement::from_scalar(n, 3, F));
  EXPECT_THROW(circ(a, truncate(a, 3)), std::invalid_argument);
}

TEST(Weyl, WedgeSigns) {
  EXPECT_EQ(wedge_sign(0, 0b10u), 1);
  EXPECT_EQ(wedge_sign(1, 0b01u), -1);
  EXPECT_EQ(wedge_sign(1, 0b10u), 0);
  EXPECT_EQ(wedge_sign(0b10u, 0b01u), -1);
  EXPECT_EQ(wedge_sign(0b01u, 0b10u), 1);
  EXPECT_EQ(wedge_sign(0b1010u, 0b0101u), -1); // dx2 dx4 dx1 dx3 -> 3 inversions
}

TEST(Weyl, ExtendedAlgebraAllowsNegativeNu) {
  const int n = 1, N = 4;
  WeylElement a = y(n, N, 0).nu_shifted(0);
  EXPECT_THROW(WeylElement::nu(n, N, 1).nu_shifted(-2), std::domain_error);
  WeylElement yy = circ(y(n, N, 0), y(n, N, 1)).as_extended();
  WeylElement inv = yy.nu_shifted(-1);
  EXPECT_TRUE(inv.extended());
  EXPECT_EQ(inv.min_degree(), 0);
  (void)a;
}

TEST(WeylProperty, MatchesMultinomialOracle) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 2; ++n) {
    const int N = n == 1 ? 7 : 5;
    for (int trial = 0; trial < 6; ++trial) {
      WeylElement a = random_weyl(rng, n, N, 5), b = random_weyl(rng, n, N, 5);
      EXPECT_EQ(circ(a, b), checks::moyal_weyl_oracle(a, b));
    }
  }
}

TEST(WeylProperty, Associativity) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 2; ++n) {
    const int N = n == 1 ? 7 : 5;
    for (int trial = 0; trial < 5; ++trial) {
      WeylElement a = random_weyl(rng, n, N, 4), b = random_weyl(rng, n, N, 4),
                  c = random_weyl(rng, n, N, 4);
      EXPECT_EQ(circ(circ(a, b), c), circ(a, circ(b, c)));
    }
  }
}

TEST(WeylProperty, TruncationCommutesWithProduct) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    WeylElement a = random_weyl(rng, 1, 8, 6), b = random_weyl(rng, 1, 8, 6);
    for (int Np = 2; Np <= 8; Np += 2)
      EXPECT_EQ(truncate(circ(a, b), Np), circ(truncate(a, Np), truncate(b, Np)));
  }
}

TEST(WeylProperty, GradedJacobi) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    WeylElement a = random_weyl(rng, 1, 7, 4), b = random_weyl(rng, 1, 7, 4),
                c = random_weyl(rng, 1, 7, 4);
    int qa = trial % 2, qb = (trial / 2) % 2, qc = 0;
    a = a.form_part(qa);
    b = b.form_part(qb);
    c = c.form_part(qc);
    // [a,[b,c]] = [[a,b],c] + (-1)^{qa qb} [b,[a,c]]
    WeylElement lhs = graded_commutator(a, graded_commutator(b, c));
    WeylElement rhs = graded_commutator(graded_commutator(a, b), c);
    WeylElement third = graded_commutator(b, graded_commutator(a, c));
    rhs += (qa * qb) % 2 ? -third : third;
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(WeylProperty, CommutatorIsGradedAntisymmetricAndMatchesDefinition) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    WeylElement a = random_weyl(rng, 1, 7, 4).form_part(trial % 2);
    WeylElement b = random_weyl(rng, 1, 7, 4).form_part((trial / 2) % 2);
    int s = (trial % 2) * ((trial / 2) % 2) ? -1 : 1;
    EXPECT_EQ(graded_commutator(a, b), circ(a, b) - circ(b, a).scaled(Complex(s)));
    EXPECT_EQ(commutator_over_nu(a, b).nu_shifted(1), graded_commutator(a, b).with_order(7).degree_range(0, 7) -
                                                          graded_commutator(a, b).degree_range(8, 7));
  }
}

TEST(WeylProperty, DeltaIsGradedDerivationAndNilpotent) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 2; ++n) {
    const int N = n == 1 ? 7 : 5;
    for (int trial = 0; trial < 5; ++trial) {
      WeylElement a = random_weyl(rng, n, N, 5), b = random_weyl(rng, n, N, 5);
      int qa = trial % 2;
      a = a.form_part(qa);
      // δ lowers degree by one, so compare below the top degree.
      WeylElement lhs = delta(circ(a, b)).degree_range(0, N - 1);
      WeylElement rhs = circ(delta(a), b) + circ(a, delta(b)).scaled(Complex(qa ? -1 : 1));
      EXPECT_EQ(lhs, rhs.degree_range(0, N - 1));
      EXPECT_TRUE(delta(delta(a)).is_zero());
      EXPECT_TRUE(delta_inv(delta_inv(a)).is_zero());
    }
  }
}

TEST(WeylProperty, HodgeDecomposition) {
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      WeylElement a = random_weyl(rng, n, 6, 8, 4).degree_range(0, 5);
      WeylElement pi00(n, 6);
      for (const auto& r : a.runs())
        if (r.key.y_degree() == 0 && r.key.form_degree() == 0)
          pi00 += WeylElement::monomial(n, 6, r.key, a.coefficient(r.key));
      EXPECT_EQ(delta(delta_inv(a)) + delta_inv(delta(a)) + pi00, a);
    }
  }
}

TEST(WeylProperty, MoyalStarOracleMatchesWeylAtZeroY) {
  // For functions of y only, σ(y-Taylor lifts) would need the Fedosov map; here we only
  // check that the function-level oracle is associative and has {F,G} as C1-.
  std::mt19937_64 rng(10);
  const int n = 1, K = 3;
  SymplecticData sd{n};
  for (int trial = 0; trial < 3; ++trial) {
    ScalarFn f = checks::random_real_function(rng, n, 1, 2), g = checks::random_real_function(rng, n, 1, 2),
             h = checks::random_real_function(rng, n, 1, 2);
    FormalFunction F = FormalFunction::from_scalar(f, K), G = FormalFunction::from_scalar(g, K),
                   H = FormalFunction::from_scalar(h, K);
    EXPECT_EQ(checks::moyal_star_oracle(checks::moyal_star_oracle(F, G, K), H, K),
              checks::moyal_star_oracle(F, checks::moyal_star_oracle(G, H, K), K));
    FormalFunction fg = checks::moyal_star_oracle(F, G, K), gf = checks::moyal_star_oracle(G, F, K);
    ScalarFn pb(n);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (sd.lambda(j, k)) pb += (f.partial(j) * g.partial(k)).scaled(Complex(sd.lambda(j, k)));
    EXPECT_EQ(fg[1] - gf[1], pb);
    EXPECT_EQ(fg[0], f * g);
  }
}
